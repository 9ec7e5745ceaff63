use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Which displacement is being measured.
///
/// `Late` and `Early` are insertion policies. `Unsuccessful` is the cost of an
/// unsuccessful search, which only depends on the chain partition and is
/// therefore shared by both policies; it can never drive an insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Policy {
    /// Late insertion (LISCH): a colliding item goes to the end of its chain.
    #[serde(rename = "L")]
    Late,
    /// Early insertion (EISCH): a colliding item is linked in directly after
    /// its hash address.
    #[serde(rename = "E")]
    Early,
    /// Unsuccessful search.
    #[serde(rename = "U")]
    Unsuccessful,
}

impl Policy {
    pub const ALL: [Policy; 3] = [Policy::Unsuccessful, Policy::Late, Policy::Early];

    pub fn is_insertion(self) -> bool {
        !matches!(self, Policy::Unsuccessful)
    }

    pub fn letter(self) -> char {
        match self {
            Policy::Late => 'L',
            Policy::Early => 'E',
            Policy::Unsuccessful => 'U',
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "L" | "LISCH" | "LATE" => Ok(Policy::Late),
            "E" | "EISCH" | "EARLY" => Ok(Policy::Early),
            "U" | "UNSUCCESSFUL" => Ok(Policy::Unsuccessful),
            _ => Err(format!("unknown policy '{s}' (expected U, L or E)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for p in Policy::ALL {
            assert_eq!(p.to_string().parse::<Policy>().unwrap(), p);
        }
        assert_eq!("eisch".parse::<Policy>().unwrap(), Policy::Early);
        assert!("X".parse::<Policy>().is_err());
    }

    #[test]
    fn only_l_and_e_insert() {
        assert!(Policy::Late.is_insertion());
        assert!(Policy::Early.is_insertion());
        assert!(!Policy::Unsuccessful.is_insertion());
    }
}
