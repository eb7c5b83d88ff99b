//! JSON and DOT output.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::order::FinCim;
use crate::text::Object;
use crate::topology::{members, FinTop};

fn named_table(t: &[Vec<usize>], names: &[String]) -> Vec<Vec<String>> {
    t.iter()
        .map(|r| r.iter().map(|&x| names[x].clone()).collect())
        .collect()
}

fn cim_names(c: &FinCim) -> Vec<String> {
    c.elements().map(|x| c.name(x)).collect()
}

/// JSON form of any block, with element names in every table.
pub fn object_json(name: &str, obj: &Object) -> Value {
    let body = match obj {
        Object::Cim(c) => {
            let n = cim_names(c);
            json!({
                "elements": n,
                "zero": n[c.bottom()],
                "one": n[c.top()],
                "add": named_table(&c.join_table(), &n),
            })
        }
        Object::Semiring(r) => {
            let n = cim_names(r.cim());
            json!({
                "elements": n,
                "zero": n[r.zero()],
                "one": n[r.one()],
                "add": named_table(&r.cim().join_table(), &n),
                "mul": named_table(&r.mul_table(), &n),
            })
        }
        Object::Top(x) => serde_json::to_value(x.to_json()).expect("serializable"),
        Object::Module { over, module } => {
            let n = cim_names(module.carrier());
            json!({
                "over": over,
                "elements": n,
                "zero": n[module.zero()],
                "add": named_table(&module.carrier().join_table(), &n),
                "act": named_table(&module.action_table(), &n),
            })
        }
        Object::Monoid(m) => {
            let n = m.names();
            json!({
                "elements": n,
                "one": n[m.one()],
                "mul": named_table(&m.mul_table(), n),
            })
        }
        Object::Ring(r) => {
            let n = r.names();
            json!({
                "elements": n,
                "zero": n[r.zero()],
                "one": n[r.one()],
                "add": named_table(&r.add_table(), n),
                "mul": named_table(&r.mul_table(), n),
            })
        }
    };
    json!({ "kind": obj.kind(), "name": name, "value": body })
}

pub fn to_json_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram of the specialization order: an edge `x -> y` when `y`
/// lies in the closure of `x` with nothing strictly between.
pub fn space_dot(name: &str, x: &FinTop) -> String {
    let n = x.size();
    let below = |a: usize, b: usize| a != b && x.point_closure(a) >> b & 1 == 1;
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quote(name));
    for p in x.points() {
        let _ = writeln!(s, "  {};", quote(p));
    }
    for a in 0..n {
        for b in members(x.point_closure(a)) {
            if below(a, b) && !(0..n).any(|c| below(a, c) && below(c, b)) {
                let _ = writeln!(
                    s,
                    "  {} -> {};",
                    quote(&x.points()[a]),
                    quote(&x.points()[b])
                );
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Hasse diagram of an order, edges pointing upwards.
pub fn order_dot(name: &str, c: &FinCim) -> String {
    let names = cim_names(c);
    let mut s = String::new();
    let _ = writeln!(s, "digraph {} {{", quote(name));
    for n in &names {
        let _ = writeln!(s, "  {};", quote(n));
    }
    for a in c.elements() {
        for b in c.elements() {
            if c.lt(a, b) && !c.elements().any(|m| c.lt(a, m) && c.lt(m, b)) {
                let _ = writeln!(s, "  {} -> {};", quote(&names[a]), quote(&names[b]));
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::spectrum::spec;

    #[test]
    fn spec_c3_dot_has_one_edge() {
        let s = spec(&fixtures::c3()).unwrap();
        let dot = space_dot("SpecC3", &s.space);
        assert_eq!(dot.matches("->").count(), 1);
        assert_eq!(
            dot.lines()
                .filter(|l| l.ends_with(';') && !l.contains("->"))
                .count(),
            2
        );
        // the generic point specializes to the closed point
        assert!(dot.contains("\"0\" -> \"m\""), "{dot}");
    }

    #[test]
    fn order_dot_of_diamond() {
        let dot = order_dot("B4", fixtures::b4().cim());
        assert_eq!(dot.matches("->").count(), 4);
    }

    #[test]
    fn json_uses_names() {
        let v = object_json("C3", &Object::Semiring(fixtures::c3()));
        assert_eq!(v["value"]["mul"][1][2], "m");
        assert_eq!(v["kind"], "semiring");
    }
}
