use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Dense element index. Every finite carrier in this crate is `0..n`.
pub type Elem = usize;

/// A named law together with the elements that break it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub witness: Vec<Elem>,
}

impl Violation {
    pub fn new(law: Law, witness: impl Into<Vec<Elem>>) -> Self {
        Violation {
            law,
            witness: witness.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {:?}", self.law, self.witness)
    }
}

/// Outcome of a law check: `Ok(())` or the first violation found.
pub type Verdict = std::result::Result<(), Violation>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    AddCommutative,
    AddAssociative,
    AddIdempotent,
    ZeroIsUnit,
    TopAbsorbs,
    MissingInfimum,
    MulCommutative,
    MulAssociative,
    MulUnit,
    ZeroAnnihilates,
    Distributive,
    Idealic,
    IdempotentMul,
    NotHomomorphism,
    NotCongruence,
    SemiorderReflexive,
    SemiorderTransitive,
    SemiorderSum,
    SemiorderExtendsOrder,
    SemiorderProduct,
    ActionUnit,
    ActionZero,
    ActionAdditive,
    ActionScalarAdditive,
    ActionAssociative,
    TopologyEmpty,
    TopologyFull,
    TopologyIntersection,
    TopologyUnion,
    AddInverse,
    NotSober,
    NotFunctorial,
    NotMultiplicativeSystem,
    NotPrime,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Law::AddCommutative => "commutativity of addition",
            Law::AddAssociative => "associativity of addition",
            Law::AddIdempotent => "idempotency of addition",
            Law::ZeroIsUnit => "zero is the additive unit",
            Law::TopAbsorbs => "top absorbs addition",
            Law::MissingInfimum => "existence of binary infima",
            Law::MulCommutative => "commutativity of multiplication",
            Law::MulAssociative => "associativity of multiplication",
            Law::MulUnit => "multiplicative unit",
            Law::ZeroAnnihilates => "zero annihilates",
            Law::Distributive => "distribution law",
            Law::Idealic => "unit is the top element",
            Law::IdempotentMul => "idempotency of multiplication",
            Law::NotHomomorphism => "homomorphism law",
            Law::NotCongruence => "congruence compatibility",
            Law::SemiorderReflexive => "semiorder reflexivity",
            Law::SemiorderTransitive => "semiorder transitivity",
            Law::SemiorderSum => "semiorder sum compatibility",
            Law::SemiorderExtendsOrder => "semiorder contains the order",
            Law::SemiorderProduct => "semiorder product compatibility",
            Law::ActionUnit => "1 acts as identity",
            Law::ActionZero => "zero action",
            Law::ActionAdditive => "action distributes over module addition",
            Law::ActionScalarAdditive => "action distributes over scalar addition",
            Law::ActionAssociative => "action associativity",
            Law::TopologyEmpty => "empty set is closed",
            Law::TopologyFull => "whole space is closed",
            Law::TopologyIntersection => "closed sets are closed under intersection",
            Law::TopologyUnion => "closed sets are closed under union",
            Law::AddInverse => "additive inverses",
            Law::NotSober => "sobriety",
            Law::NotFunctorial => "functoriality of restrictions",
            Law::NotMultiplicativeSystem => "multiplicative system",
            Law::NotPrime => "primality",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("format error: {0}")]
    Format(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid structure: {0}")]
    Invalid(Violation),

    #[error("invalid structure at line {line}, column {column}: {violation}")]
    InvalidAt {
        line: usize,
        column: usize,
        violation: Violation,
    },

    #[error("size guard exceeded: {what} needs {needed}, limit is {limit}")]
    Guard {
        what: &'static str,
        needed: usize,
        limit: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Invalid(v)
    }
}
