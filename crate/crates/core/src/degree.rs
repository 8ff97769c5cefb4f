use std::fmt;

use serde::{Serialize, Serializer};

/// An integer or −∞ (the degree of the zero module).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtDegree {
    NegInf,
    Finite(i64),
}

impl ExtDegree {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtDegree::NegInf => None,
            ExtDegree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == ExtDegree::NegInf
    }
}

impl From<i64> for ExtDegree {
    fn from(d: i64) -> Self {
        ExtDegree::Finite(d)
    }
}

impl fmt::Display for ExtDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDegree::NegInf => write!(f, "-inf"),
            ExtDegree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// JSON has no −∞; it is written as the string `"-inf"`.
impl Serialize for ExtDegree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtDegree::NegInf => s.serialize_str("-inf"),
            ExtDegree::Finite(d) => s.serialize_i64(*d),
        }
    }
}
