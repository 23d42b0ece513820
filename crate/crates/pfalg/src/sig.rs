//! Operation symbols and signatures.

use std::fmt;

use thiserror::Error;

/// An operation symbol of the language of partial functions.
///
/// Arities: `Compose`, `Meet` and `PrefUnion` are binary; `Dom`, `AntiDom`,
/// `Range`, `Fixset` and `MaxIter` are unary; `Zero` and `Identity` are
/// constants.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Op {
    /// `f;g`, apply `f` then `g`.
    Compose,
    /// `f.g`, intersection of graphs.
    Meet,
    /// `f+g`, `f` where defined, else `g`.
    PrefUnion,
    /// `d(f)`, identity on the domain of `f`.
    Dom,
    /// `a(f)`, identity on the base-set complement of the domain of `f`.
    AntiDom,
    /// `r(f)`, identity on the range of `f`.
    Range,
    /// `fix(f)`, identity on the fixed points of `f`.
    Fixset,
    /// `f^`, iterate `f` until leaving its domain; undefined on cycles.
    MaxIter,
    /// `0`, the empty function.
    Zero,
    /// `1'`, the identity function on the base.
    Identity,
}

impl Op {
    /// Canonical symbol order, also the iteration order of [`Signature`].
    pub const ALL: [Op; 10] = [
        Op::Compose,
        Op::Meet,
        Op::PrefUnion,
        Op::Dom,
        Op::AntiDom,
        Op::Range,
        Op::Fixset,
        Op::MaxIter,
        Op::Zero,
        Op::Identity,
    ];

    pub fn arity(self) -> usize {
        match self {
            Op::Compose | Op::Meet | Op::PrefUnion => 2,
            Op::Dom | Op::AntiDom | Op::Range | Op::Fixset | Op::MaxIter => 1,
            Op::Zero | Op::Identity => 0,
        }
    }

    /// The token used in signature strings, term syntax and algebra files.
    pub fn token(self) -> &'static str {
        match self {
            Op::Compose => ";",
            Op::Meet => ".",
            Op::PrefUnion => "+",
            Op::Dom => "d",
            Op::AntiDom => "a",
            Op::Range => "r",
            Op::Fixset => "fix",
            Op::MaxIter => "^",
            Op::Zero => "0",
            Op::Identity => "1'",
        }
    }

    pub fn from_token(tok: &str) -> Option<Op> {
        Op::ALL.iter().copied().find(|op| op.token() == tok)
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("signature must contain the composition symbol `;`")]
    MissingCompose,
    #[error("unknown operation token `{0}`")]
    UnknownToken(String),
}

/// A set of operation symbols, always containing composition.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    bits: u16,
}

impl Signature {
    pub fn new(ops: impl IntoIterator<Item = Op>) -> Result<Signature, SignatureError> {
        let mut bits = 0;
        for op in ops {
            bits |= op.bit();
        }
        if bits & Op::Compose.bit() == 0 {
            return Err(SignatureError::MissingCompose);
        }
        Ok(Signature { bits })
    }

    /// The full signature with every symbol.
    pub fn full() -> Signature {
        Signature::new(Op::ALL).unwrap()
    }

    /// Parse a whitespace-separated list of tokens, e.g. `"; d r 0"`.
    pub fn parse(s: &str) -> Result<Signature, SignatureError> {
        let mut ops = Vec::new();
        for tok in s.split_whitespace() {
            match Op::from_token(tok) {
                Some(op) => ops.push(op),
                None => return Err(SignatureError::UnknownToken(tok.to_string())),
            }
        }
        Signature::new(ops)
    }

    pub fn contains(self, op: Op) -> bool {
        self.bits & op.bit() != 0
    }

    pub fn contains_all(self, other: Signature) -> bool {
        self.bits & other.bits == other.bits
    }

    pub fn with(self, op: Op) -> Signature {
        Signature {
            bits: self.bits | op.bit(),
        }
    }

    pub fn without(self, op: Op) -> Signature {
        debug_assert!(op != Op::Compose);
        Signature {
            bits: self.bits & !op.bit(),
        }
    }

    /// Symbols in canonical order.
    pub fn iter(self) -> impl Iterator<Item = Op> {
        Op::ALL.into_iter().filter(move |op| self.contains(*op))
    }

    /// True if the signature can express the domain operation, either
    /// primitively or as the double antidomain.
    pub fn has_domain_notion(self) -> bool {
        self.contains(Op::Dom) || self.contains(Op::AntiDom)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for op in self.iter() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(op.token())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_mandatory() {
        assert_eq!(
            Signature::new([Op::Dom]),
            Err(SignatureError::MissingCompose)
        );
        assert!(Signature::new([Op::Compose, Op::Dom]).is_ok());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let sig = Signature::parse("; . d r fix 0").unwrap();
        assert_eq!(sig.to_string(), "; . d r fix 0");
        assert_eq!(Signature::parse(&sig.to_string()), Ok(sig));
        assert!(sig.contains(Op::Meet));
        assert!(!sig.contains(Op::AntiDom));
    }

    #[test]
    fn iteration_order_is_canonical() {
        let sig = Signature::parse("1' 0 ^ fix r a d + . ;").unwrap();
        let ops: Vec<Op> = sig.iter().collect();
        assert_eq!(ops, Op::ALL.to_vec());
    }

    #[test]
    fn unknown_token_rejected() {
        assert_eq!(
            Signature::parse("; q"),
            Err(SignatureError::UnknownToken("q".to_string()))
        );
    }
}
