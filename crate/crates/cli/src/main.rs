//! `idemspec`: command-line front end.
//!
//! Exit codes: 0 when everything checked holds, 1 when a violation is
//! found, 2 on usage, format or guard errors.

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use idemspec::congruence::{congruence_closure, quotient, QuotientHom};
use idemspec::enumerate::{enumerate_idealic_semirings, enumerate_posets, enumerate_semirings};
use idemspec::guards::MAX_CARRIER_ENV;
use idemspec::localization::{localize, radical, MultSystem};
use idemspec::modules::tensor;
use idemspec::report::{object_json, order_dot, space_dot, to_json_string};
use idemspec::schemes::{adjunction_check, spec_scheme, Algebra, AlgebraKind, SchematizableType};
use idemspec::spectrum::{duality_check, duality_check_space, glue, spec};
use idemspec::text::{as_algebra, emit_block, parse, Document, Object};
use idemspec::topology::{closed_set_semiring, soberify};
use idemspec::verify::{verify, Status, Suite, VerifyInput};
use idemspec::{Elem, Error, Execution, FinSemiring, Guards};

#[derive(Parser)]
#[command(
    name = "idemspec",
    version,
    about = "Finite idempotent semirings, spectra and schemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Print JSON instead of the text format.
    #[arg(long, global = true)]
    json: bool,
    /// Run enumerations and suites on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Replace every size guard with this bound.
    #[arg(long, global = true, env = MAX_CARRIER_ENV)]
    max_carrier: Option<usize>,
    /// Carrier bound for enumerating all congruences.
    #[arg(long, global = true)]
    max_congruence_carrier: Option<usize>,
    /// Bound on |M| * |N| for tensor products.
    #[arg(long, global = true)]
    max_tensor_pairs: Option<usize>,
    /// Bound on closed-set lattices and multiplicative-system scans.
    #[arg(long, global = true)]
    max_lattice: Option<usize>,
}

impl Global {
    fn guards(&self) -> Guards {
        let mut g = match self.max_carrier {
            Some(n) => Guards::uniform(n),
            None => Guards::default(),
        };
        if let Some(n) = self.max_congruence_carrier {
            g.congruence_carrier = n;
        }
        if let Some(n) = self.max_tensor_pairs {
            g.tensor_pairs = n;
        }
        if let Some(n) = self.max_lattice {
            g.lattice = n;
        }
        g
    }

    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Args)]
struct Input {
    /// Document in the text format; `-` reads stdin.
    file: PathBuf,
    /// Block to use when the document has several.
    #[arg(long, short)]
    name: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a document and summarize its blocks.
    Check { file: PathBuf },
    /// Prime spectrum of a semiring.
    Spec {
        #[command(flatten)]
        input: Input,
        /// Emit the specialization order as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// C(X) for a space, or the duality check for a semiring.
    Dual {
        #[command(flatten)]
        input: Input,
        /// Emit the order of C(X), or of the semiring, as DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Soberification of a space.
    Soberify {
        #[command(flatten)]
        input: Input,
    },
    /// Localize a semiring.
    Localize {
        #[command(flatten)]
        input: Input,
        /// Invert the powers of one element.
        #[arg(long, group = "system")]
        at: Option<String>,
        /// Invert the multiplicative system generated by these elements.
        #[arg(long, group = "system", value_delimiter = ',')]
        sigma: Option<Vec<String>>,
        /// Invert everything outside a prime.
        #[arg(long, group = "system")]
        prime: Option<String>,
    },
    /// Radical of an element.
    Radical {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        of: String,
    },
    /// Quotient by the congruence generated by pairs `a=b`.
    Quotient {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', required = true)]
        pairs: Vec<String>,
    },
    /// Glue local sections `f_i` over `s_i` into an element over `s`.
    Glue {
        #[command(flatten)]
        input: Input,
        /// The covered element.
        #[arg(long)]
        over: String,
        /// One local section as `s_i:f_i`; repeat for each part.
        #[arg(long = "part", required = true)]
        parts: Vec<String>,
    },
    /// Tensor product of two modules.
    Tensor {
        file: PathBuf,
        left: String,
        right: String,
    },
    /// Spectrum with its structure sheaf for a ring, monoid or semiring.
    Scheme {
        #[command(flatten)]
        input: Input,
        /// Algebra type; defaults to the kind of the block.
        #[arg(long = "type")]
        stype: Option<AlgebraKind>,
        /// Print every section algebra.
        #[arg(long)]
        sections: bool,
        /// Check the scheme conditions and the adjunction.
        #[arg(long)]
        verify: bool,
    },
    /// Run a verification suite on the built-in corpus or a document.
    Verify {
        suite: Suite,
        file: Option<PathBuf>,
        /// Largest enumerated instance.
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Enumerate spaces or semirings up to isomorphism.
    Enumerate {
        what: What,
        n: usize,
        /// Only idealic semirings.
        #[arg(long)]
        idealic: bool,
        /// Print each instance as a block.
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Posets,
    Semirings,
}

/// Outcome of a command that ran to completion.
enum Done {
    Ok,
    Violation,
}

type Run = Result<Done, Error>;

fn read(file: &PathBuf) -> Result<Document, Error> {
    let text = if file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Format(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(file)
            .map_err(|e| Error::Format(format!("{}: {e}", file.display())))?
    };
    parse(&text)
}

fn pick(input: &Input) -> Result<(String, Object), Error> {
    let doc = read(&input.file)?;
    let (n, o) = doc.pick(input.name.as_deref())?;
    Ok((n.clone(), o.clone()))
}

fn semiring_of(input: &Input) -> Result<(String, FinSemiring), Error> {
    match pick(input)? {
        (n, Object::Semiring(r)) => Ok((n, r)),
        (n, o) => Err(Error::Format(format!(
            "{n} is a {}, not a semiring",
            o.kind()
        ))),
    }
}

fn element(r: &FinSemiring, label: &str) -> Result<Elem, Error> {
    r.index_of(label)
        .ok_or_else(|| Error::Format(format!("no element named {label}")))
}

fn print_object(g: &Global, name: &str, obj: &Object) {
    if g.json {
        println!("{}", to_json_string(&object_json(name, obj)));
    } else {
        print!("{}", emit_block(name, obj));
    }
}

fn print_quotient(g: &Global, name: &str, r: &FinSemiring, q: &QuotientHom) {
    if g.json {
        let classes: Vec<Vec<String>> = q
            .cong
            .classes()
            .iter()
            .map(|c| c.iter().map(|&x| r.name(x)).collect())
            .collect();
        let v = json!({
            "classes": classes,
            "quotient": object_json(name, &Object::Semiring(q.quotient.clone())),
        });
        println!("{}", to_json_string(&v));
    } else {
        for c in q.cong.classes() {
            let names: Vec<String> = c.iter().map(|&x| r.name(x)).collect();
            println!("# class {{{}}}", names.join(", "));
        }
        print!(
            "{}",
            emit_block(name, &Object::Semiring(q.quotient.clone()))
        );
    }
}

fn algebra_object(a: &Algebra) -> Object {
    match a {
        Algebra::Ring(r) => Object::Ring(r.clone()),
        Algebra::Monoid(m) => Object::Monoid(m.clone()),
        Algebra::Semiring(r) => Object::Semiring(r.clone()),
    }
}

fn check(g: &Global, file: &PathBuf) -> Run {
    let doc = read(file)?;
    let mut rows = Vec::new();
    for (name, obj) in &doc.blocks {
        let size = match obj {
            Object::Cim(c) => c.size(),
            Object::Semiring(r) => r.size(),
            Object::Top(x) => x.size(),
            Object::Module { module, .. } => module.size(),
            Object::Monoid(m) => m.size(),
            Object::Ring(r) => r.size(),
        };
        let idealic = match obj {
            Object::Semiring(r) => Some(r.is_idealic()),
            _ => None,
        };
        rows.push((name.clone(), obj.kind(), size, idealic));
    }
    if g.json {
        let v: Vec<_> = rows
            .iter()
            .map(|(n, k, s, i)| json!({"name": n, "kind": k, "size": s, "idealic": i}))
            .collect();
        println!("{}", to_json_string(&v));
    } else {
        for (n, k, s, i) in rows {
            let extra = match i {
                Some(true) => ", idealic",
                Some(false) => ", not idealic",
                None => "",
            };
            println!("{k} {n}: {s} elements{extra}");
        }
    }
    Ok(Done::Ok)
}

fn spec_cmd(g: &Global, input: &Input, dot: bool) -> Run {
    let (name, r) = semiring_of(input)?;
    let s = spec(&r)?;
    let label = format!("Spec{name}");
    if dot {
        print!("{}", space_dot(&label, &s.space));
    } else if g.json {
        let v: Vec<_> = r
            .elements()
            .map(|a| json!({"element": r.name(a), "closed": s.space.set_label(s.v(a))}))
            .collect();
        let out = json!({"space": s.space.to_json(), "v": v});
        println!("{}", to_json_string(&out));
    } else {
        for a in r.elements() {
            println!("# V({}) = {}", r.name(a), s.space.set_label(s.v(a)));
        }
        print!("{}", emit_block(&label, &Object::Top(s.space)));
    }
    Ok(Done::Ok)
}

fn dual(g: &Global, input: &Input, dot: bool) -> Run {
    match pick(input)? {
        (name, Object::Top(x)) => {
            let d = duality_check_space(&x)?;
            let c = closed_set_semiring(&x);
            if dot {
                print!("{}", order_dot(&format!("C{name}"), c.cim()));
            } else {
                print_object(g, &format!("C{name}"), &Object::Semiring(c));
            }
            if d.homeomorphism {
                Ok(Done::Ok)
            } else {
                eprintln!("Spec C({name}) is not homeomorphic to {name}");
                Ok(Done::Violation)
            }
        }
        (name, Object::Semiring(r)) => {
            let w = duality_check(&r)?;
            let iso = w.is_iso();
            if dot {
                print!("{}", order_dot(&name, r.cim()));
            } else if g.json {
                println!(
                    "{}",
                    to_json_string(&json!({"name": name, "isomorphism": iso}))
                );
            } else if iso {
                println!("C(Spec {name}) is isomorphic to {name}");
            } else {
                println!("C(Spec {name}) is not isomorphic to {name}");
            }
            Ok(if iso { Done::Ok } else { Done::Violation })
        }
        (name, o) => Err(Error::Format(format!(
            "{name} is a {}; dual needs a top or semiring",
            o.kind()
        ))),
    }
}

fn soberify_cmd(g: &Global, input: &Input) -> Run {
    match pick(input)? {
        (name, Object::Top(x)) => {
            let s = soberify(&x);
            print_object(g, &format!("sob{name}"), &Object::Top(s.space));
            Ok(Done::Ok)
        }
        (name, o) => Err(Error::Format(format!(
            "{name} is a {}, not a top",
            o.kind()
        ))),
    }
}

fn localize_cmd(
    g: &Global,
    input: &Input,
    at: &Option<String>,
    sigma: &Option<Vec<String>>,
    prime: &Option<String>,
) -> Run {
    let (name, r) = semiring_of(input)?;
    let system = match (at, sigma, prime) {
        (Some(f), _, _) => MultSystem::powers(&r, element(&r, f)?),
        (_, Some(gens), _) => {
            let gens = gens
                .iter()
                .map(|x| element(&r, x))
                .collect::<Result<Vec<_>, _>>()?;
            MultSystem::generated(&r, &gens)
        }
        (_, _, Some(p)) => MultSystem::prime_complement(&r, element(&r, p)?)?,
        _ => return Err(Error::Format("give one of --at, --sigma, --prime".into())),
    };
    let l = localize(&r, &system)?;
    print_quotient(g, &format!("{name}_loc"), &r, &l.result);
    Ok(Done::Ok)
}

fn radical_cmd(g: &Global, input: &Input, of: &str) -> Run {
    let (_, r) = semiring_of(input)?;
    let a = element(&r, of)?;
    let rad = r.name(radical(&r, a));
    if g.json {
        println!(
            "{}",
            to_json_string(&json!({"element": of, "radical": rad}))
        );
    } else {
        println!("{rad}");
    }
    Ok(Done::Ok)
}

fn quotient_cmd(g: &Global, input: &Input, pairs: &[String]) -> Run {
    let (name, r) = semiring_of(input)?;
    let mut gens = Vec::new();
    for p in pairs {
        let (a, b) = p
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("pair {p} is not of the form a=b")))?;
        gens.push((element(&r, a.trim())?, element(&r, b.trim())?));
    }
    let q = quotient(&congruence_closure(&r, &gens))?;
    print_quotient(g, &format!("{name}_quot"), &r, &q);
    Ok(Done::Ok)
}

fn glue_cmd(g: &Global, input: &Input, over: &str, parts: &[String]) -> Run {
    let (_, r) = semiring_of(input)?;
    let s = element(&r, over)?;
    let mut pairs = Vec::new();
    for p in parts {
        let (si, fi) = p
            .split_once(':')
            .ok_or_else(|| Error::Format(format!("part {p} is not of the form s:f")))?;
        pairs.push((element(&r, si.trim())?, element(&r, fi.trim())?));
    }
    match glue(&r, s, &pairs) {
        Ok(gl) => {
            let rep = r.name(gl.representative);
            if g.json {
                println!("{}", to_json_string(&json!({"glued": rep})));
            } else {
                println!("{rep}");
            }
            Ok(Done::Ok)
        }
        // incompatible families are a finding, not a usage error
        Err(Error::Precondition(m)) => {
            eprintln!("{m}");
            Ok(Done::Violation)
        }
        Err(e) => Err(e),
    }
}

fn tensor_cmd(g: &Global, file: &PathBuf, left: &str, right: &str) -> Run {
    let doc = read(file)?;
    let module = |n: &str| match doc.get(n) {
        Some(Object::Module { over, module }) => Ok((over.clone(), module.clone())),
        Some(o) => Err(Error::Format(format!(
            "{n} is a {}, not a module",
            o.kind()
        ))),
        None => Err(Error::Format(format!("no block named {n}"))),
    };
    let (over, m) = module(left)?;
    let (_, n) = module(right)?;
    let t = tensor(&m, &n, &g.guards())?;
    let obj = Object::Module {
        over,
        module: t.module,
    };
    print_object(g, &format!("{left}_{right}"), &obj);
    Ok(Done::Ok)
}

fn scheme_cmd(
    g: &Global,
    input: &Input,
    stype: Option<AlgebraKind>,
    sections: bool,
    check: bool,
) -> Run {
    let (name, obj) = pick(input)?;
    let a = as_algebra(&obj)
        .ok_or_else(|| Error::Format(format!("{name} is a {}, not an algebra", obj.kind())))?;
    let kind = stype.unwrap_or(a.kind());
    if kind != a.kind() {
        return Err(Error::Format(
            format!("{name} is a {}, not a {kind:?}", obj.kind()).to_lowercase(),
        ));
    }
    let t = SchematizableType { kind };
    let guards = g.guards();
    let s = spec_scheme(t, &a, &guards)?;
    let mut verdict = Done::Ok;
    let mut checks = serde_json::Value::Null;
    if check {
        let c = s.scheme.check(&guards)?;
        let adj = adjunction_check(t, &a, &guards)?;
        if !(c.is_scheme() && adj.holds()) {
            verdict = Done::Violation;
        }
        checks = json!({"scheme": c, "adjunction": adj});
    }
    if g.json {
        let mut v = serde_json::to_value(s.scheme.to_json()).expect("serializable");
        v["verification"] = checks;
        println!("{}", to_json_string(&v));
        return Ok(verdict);
    }
    let x = s.space();
    println!("# points: {}", x.points().join(" "));
    print!(
        "{}",
        emit_block(&format!("Spec{name}"), &Object::Top(x.clone()))
    );
    let sheaf = s.sheaf();
    for z in (0..sheaf.closed_count()).rev() {
        let alg = sheaf.sections(z);
        println!(
            "# O({}): {} elements",
            x.set_label(sheaf.open(z)),
            alg.size()
        );
        if sections && alg.size() > 0 {
            print!("{}", emit_block(&format!("O{z}"), &algebra_object(alg)));
        }
    }
    if check {
        println!(
            "# verification: {}",
            if matches!(verdict, Done::Ok) {
                "pass"
            } else {
                "fail"
            }
        );
        println!("{}", to_json_string(&checks));
    }
    Ok(verdict)
}

fn verify_cmd(g: &Global, suite: Suite, file: &Option<PathBuf>, bound: usize) -> Run {
    let document = file.as_ref().map(read).transpose()?;
    let input = VerifyInput {
        document,
        bound,
        guards: g.guards(),
        exec: g.exec(),
    };
    let r = verify(suite, &input)?;
    if g.json {
        println!("{}", to_json_string(&r));
    } else {
        for c in &r.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            match &c.detail {
                Some(d) => println!("{status} {}: {d}", c.name),
                None => println!("{status} {}", c.name),
            }
        }
        println!(
            "{}: {} passed, {} failed, {} skipped in {} ms",
            r.suite, r.passed, r.failed, r.skipped, r.millis
        );
    }
    Ok(if r.all_pass() {
        Done::Ok
    } else {
        Done::Violation
    })
}

fn enumerate_cmd(g: &Global, what: What, n: usize, idealic: bool, emit: bool) -> Run {
    let exec = g.exec();
    let objects: Vec<Object> = match what {
        What::Posets => enumerate_posets(n, exec)?
            .into_iter()
            .map(Object::Top)
            .collect(),
        What::Semirings if idealic => enumerate_idealic_semirings(n, exec)?
            .into_iter()
            .map(Object::Semiring)
            .collect(),
        What::Semirings => enumerate_semirings(n, exec)?
            .into_iter()
            .map(Object::Semiring)
            .collect(),
    };
    let prefix = match what {
        What::Posets => "X",
        What::Semirings => "R",
    };
    if g.json {
        let v: Vec<_> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| object_json(&format!("{prefix}{n}_{i}"), o))
            .collect();
        println!(
            "{}",
            to_json_string(&json!({"n": n, "count": objects.len(), "instances": v}))
        );
    } else if emit {
        let blocks: Vec<String> = objects
            .iter()
            .enumerate()
            .map(|(i, o)| emit_block(&format!("{prefix}{n}_{i}"), o))
            .collect();
        print!("{}", blocks.join("\n"));
    } else {
        println!("{}", objects.len());
    }
    Ok(Done::Ok)
}

fn run(cli: &Cli) -> Run {
    let g = &cli.global;
    match &cli.command {
        Command::Check { file } => check(g, file),
        Command::Spec { input, dot } => spec_cmd(g, input, *dot),
        Command::Dual { input, dot } => dual(g, input, *dot),
        Command::Soberify { input } => soberify_cmd(g, input),
        Command::Localize {
            input,
            at,
            sigma,
            prime,
        } => localize_cmd(g, input, at, sigma, prime),
        Command::Radical { input, of } => radical_cmd(g, input, of),
        Command::Quotient { input, pairs } => quotient_cmd(g, input, pairs),
        Command::Glue { input, over, parts } => glue_cmd(g, input, over, parts),
        Command::Tensor { file, left, right } => tensor_cmd(g, file, left, right),
        Command::Scheme {
            input,
            stype,
            sections,
            verify,
        } => scheme_cmd(g, input, *stype, *sections, *verify),
        Command::Verify { suite, file, bound } => verify_cmd(g, *suite, file, *bound),
        Command::Enumerate {
            what,
            n,
            idealic,
            emit,
        } => enumerate_cmd(g, *what, *n, *idealic, *emit),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Done::Ok) => ExitCode::SUCCESS,
        Ok(Done::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            // a structure failing its laws is a violation; the rest are input errors
            let violation = matches!(e, Error::Invalid(_) | Error::InvalidAt { .. });
            ExitCode::from(
                if violation && matches!(cli.command, Command::Check { .. }) {
                    1
                } else {
                    2
                },
            )
        }
    }
}
