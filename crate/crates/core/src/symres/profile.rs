use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A natural number, or one of the two non-finite answers a profile may give.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "NatRepr", into = "NatRepr")]
pub enum ExtNat {
    Nat(u64),
    Infinite,
    Unknown,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NatRepr {
    Nat(u64),
    Word(String),
}

impl TryFrom<NatRepr> for ExtNat {
    type Error = String;

    fn try_from(r: NatRepr) -> Result<Self, String> {
        match r {
            NatRepr::Nat(n) => Ok(ExtNat::Nat(n)),
            NatRepr::Word(w) => w.parse(),
        }
    }
}

impl From<ExtNat> for NatRepr {
    fn from(e: ExtNat) -> Self {
        match e {
            ExtNat::Nat(n) => NatRepr::Nat(n),
            ExtNat::Infinite => NatRepr::Word("infinite".into()),
            ExtNat::Unknown => NatRepr::Word("unknown".into()),
        }
    }
}

impl std::str::FromStr for ExtNat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "infinite" | "inf" | "infinity" => Ok(ExtNat::Infinite),
            "unknown" => Ok(ExtNat::Unknown),
            other => other
                .parse()
                .map(ExtNat::Nat)
                .map_err(|_| format!("expected a natural number, `infinite` or `unknown`, got `{s}`")),
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Nat(n) => write!(f, "{n}"),
            ExtNat::Infinite => f.write_str("infinite"),
            ExtNat::Unknown => f.write_str("unknown"),
        }
    }
}

impl ExtNat {
    pub fn succ(self) -> ExtNat {
        match self {
            ExtNat::Nat(n) => ExtNat::Nat(n + 1),
            other => other,
        }
    }

    /// `Some(self <= n)` when decidable.
    pub fn at_most(self, n: u64) -> Option<bool> {
        match self {
            ExtNat::Nat(x) => Some(x <= n),
            ExtNat::Infinite => Some(false),
            ExtNat::Unknown => None,
        }
    }
}

/// Three-valued answer for questions a profile may not settle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

impl Tri {
    pub fn to_json(self) -> serde_json::Value {
        match self {
            Tri::True => true.into(),
            Tri::False => false.into(),
            Tri::Unknown => "unknown".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjTerm {
    pub fd: ExtNat,
}

/// Declarative description of a base ring `R` through its minimal injective
/// resolution `0 -> R -> I^0 -> I^1 -> ...`.
///
/// With `exact_length` the listed terms are all of them and `I^i = 0`
/// afterwards; otherwise the resolution is open-ended and unlisted terms
/// exist with unknown flat dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingProfile {
    pub name: String,
    #[serde(default)]
    pub self_injective: bool,
    #[serde(default)]
    pub inj_terms: Vec<InjTerm>,
    #[serde(default)]
    pub exact_length: bool,
    #[serde(default = "unknown")]
    pub dom_dim: ExtNat,
    #[serde(default)]
    pub gorenstein_all_k: Option<bool>,
    #[serde(default)]
    pub gorenstein: BTreeMap<String, bool>,
}

fn unknown() -> ExtNat {
    ExtNat::Unknown
}

impl RingProfile {
    /// The base field `K`.
    pub fn field() -> Self {
        RingProfile {
            name: "K".into(),
            ..RingProfile::self_injective("K")
        }
    }

    /// `K[x]/(x^2)`: self-injective, hence Auslander with infinite dominant
    /// dimension.
    pub fn dual_numbers() -> Self {
        RingProfile::self_injective("K[x]/(x^2)")
    }

    pub fn self_injective(name: &str) -> Self {
        RingProfile {
            name: name.into(),
            self_injective: true,
            inj_terms: vec![InjTerm { fd: ExtNat::Nat(0) }],
            exact_length: true,
            dom_dim: ExtNat::Infinite,
            gorenstein_all_k: Some(true),
            gorenstein: BTreeMap::new(),
        }
    }

    /// Nothing known: every `I^i` exists, no flat dimensions, no flags.
    pub fn open_ended() -> Self {
        RingProfile {
            name: "generic".into(),
            self_injective: false,
            inj_terms: Vec::new(),
            exact_length: false,
            dom_dim: ExtNat::Unknown,
            gorenstein_all_k: None,
            gorenstein: BTreeMap::new(),
        }
    }

    /// A custom profile listing `fd(I^0), fd(I^1), ...`.
    pub fn truncated(name: &str, fds: &[ExtNat], exact_length: bool) -> Self {
        RingProfile {
            name: name.into(),
            inj_terms: fds.iter().map(|&fd| InjTerm { fd }).collect(),
            exact_length,
            ..RingProfile::open_ended()
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let p: RingProfile =
            serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("ring profile: {e}")))?;
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<()> {
        if self.self_injective
            && !(self.exact_length && self.inj_terms.len() == 1 && self.inj_terms[0].fd == ExtNat::Nat(0))
        {
            return Err(Error::InvalidArgument(
                "a self-injective profile has exactly one term I^0 with fd 0".into(),
            ));
        }
        for k in self.gorenstein.keys() {
            if k.parse::<u64>().map_or(true, |k| k == 0) {
                return Err(Error::InvalidArgument(format!("gorenstein key `{k}` is not a positive integer")));
            }
        }
        Ok(())
    }

    /// Whether `I^i` is (possibly) nonzero.
    pub fn has_term(&self, i: usize) -> bool {
        !self.exact_length || i < self.inj_terms.len()
    }

    /// `fd(I^i)`; a term past the exact length is zero.
    pub fn fd(&self, i: usize) -> ExtNat {
        match self.inj_terms.get(i) {
            Some(t) => t.fd,
            None if self.exact_length => ExtNat::Nat(0),
            None => ExtNat::Unknown,
        }
    }

    /// Whether `R` is `k`-Gorenstein: an explicit flag for `k`, else the
    /// all-`k` flag, else `fd(I^i) <= i` for `i < k` read off the terms.
    pub fn is_k_gorenstein(&self, k: usize) -> Tri {
        if let Some(&b) = self.gorenstein.get(&k.to_string()) {
            return b.into();
        }
        if self.gorenstein_all_k == Some(true) {
            return Tri::True;
        }
        let mut verdict = Tri::True;
        for i in 0..k {
            match self.fd(i).at_most(i as u64) {
                Some(true) => {}
                Some(false) => return Tri::False,
                None => verdict = Tri::Unknown,
            }
        }
        verdict
    }
}
