//! Group descriptors: which group to build, serializable as JSON.

use super::GroupError;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A buildable group. Matrix kinds are over the prime field F_p;
/// permutation groups are given by generators in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Gl { n: u32, p: u32 },
    Sl { n: u32, p: u32 },
    Psl { n: u32, p: u32 },
    Perm { degree: u32, generators: Vec<String> },
}

impl GroupSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            GroupSpec::Gl { .. } => "gl",
            GroupSpec::Sl { .. } => "sl",
            GroupSpec::Psl { .. } => "psl",
            GroupSpec::Perm { .. } => "perm",
        }
    }

    /// Parses shorthand like "sl2:5", "psl2:7", "gl3:3". Permutation
    /// groups have no shorthand; load those from a JSON descriptor.
    pub fn parse_shorthand(text: &str) -> Result<GroupSpec, GroupError> {
        let bad =
            |msg: &str| GroupError::SpecParse { text: text.to_string(), msg: msg.to_string() };
        let split = text
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| bad("expected <kind><n>:<p>, e.g. sl2:5"))?;
        let (kind, rest) = text.split_at(split);
        let (n_str, p_str) = rest
            .split_once(':')
            .ok_or_else(|| bad("expected ':' between dimension and characteristic"))?;
        let n: u32 = n_str.parse().map_err(|_| bad("bad dimension"))?;
        let p: u32 = p_str.parse().map_err(|_| bad("bad characteristic"))?;
        match kind {
            "gl" => Ok(GroupSpec::Gl { n, p }),
            "sl" => Ok(GroupSpec::Sl { n, p }),
            "psl" => Ok(GroupSpec::Psl { n, p }),
            other => Err(bad(&format!("unknown kind '{other}'"))),
        }
    }

    /// Theoretical order when a closed formula exists (matrix kinds).
    pub fn formula_order(&self) -> Option<u128> {
        let (n, p) = match *self {
            GroupSpec::Gl { n, p } | GroupSpec::Sl { n, p } | GroupSpec::Psl { n, p } => {
                (n as u128, p as u128)
            }
            GroupSpec::Perm { .. } => return None,
        };
        let pn = p.checked_pow(n as u32)?;
        let mut gl: u128 = 1;
        let mut pi: u128 = 1;
        for _ in 0..n {
            gl = gl.checked_mul(pn - pi)?;
            pi = pi.checked_mul(p)?;
        }
        Some(match self {
            GroupSpec::Gl { .. } => gl,
            GroupSpec::Sl { .. } => gl / (p - 1),
            GroupSpec::Psl { .. } => gl / (p - 1) / gcd(n, p - 1),
            GroupSpec::Perm { .. } => unreachable!("handled above"),
        })
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Gl { n, p } => write!(f, "gl{n}:{p}"),
            GroupSpec::Sl { n, p } => write!(f, "sl{n}:{p}"),
            GroupSpec::Psl { n, p } => write!(f, "psl{n}:{p}"),
            GroupSpec::Perm { degree, generators } => {
                write!(f, "perm(degree={degree}, {} generators)", generators.len())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand() {
        assert_eq!(GroupSpec::parse_shorthand("sl2:5").unwrap(), GroupSpec::Sl { n: 2, p: 5 });
        assert_eq!(GroupSpec::parse_shorthand("psl2:7").unwrap(), GroupSpec::Psl { n: 2, p: 7 });
        assert_eq!(GroupSpec::parse_shorthand("gl3:3").unwrap(), GroupSpec::Gl { n: 3, p: 3 });
        assert!(GroupSpec::parse_shorthand("su2:5").is_err());
        assert!(GroupSpec::parse_shorthand("sl2").is_err());
        assert!(GroupSpec::parse_shorthand("m11").is_err());
    }

    #[test]
    fn json_round_trip() {
        let spec = GroupSpec::Psl { n: 2, p: 7 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"kind":"psl","n":2,"p":7}"#);
        assert_eq!(serde_json::from_str::<GroupSpec>(&json).unwrap(), spec);

        let perm: GroupSpec =
            serde_json::from_str(r#"{"kind":"perm","degree":3,"generators":["(1 2 3)","(1 2)"]}"#)
                .unwrap();
        assert_eq!(
            perm,
            GroupSpec::Perm { degree: 3, generators: vec!["(1 2 3)".into(), "(1 2)".into()] }
        );
    }

    #[test]
    fn order_formulas() {
        assert_eq!(GroupSpec::parse_shorthand("gl2:5").unwrap().formula_order(), Some(480));
        assert_eq!(GroupSpec::parse_shorthand("sl2:5").unwrap().formula_order(), Some(120));
        assert_eq!(GroupSpec::parse_shorthand("psl2:5").unwrap().formula_order(), Some(60));
        assert_eq!(GroupSpec::parse_shorthand("psl2:7").unwrap().formula_order(), Some(168));
        assert_eq!(GroupSpec::parse_shorthand("sl3:3").unwrap().formula_order(), Some(5616));
        assert_eq!(GroupSpec::parse_shorthand("psl3:3").unwrap().formula_order(), Some(5616));
        assert_eq!(GroupSpec::parse_shorthand("psl2:2").unwrap().formula_order(), Some(6));
    }
}
