use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlat::Int;

/// A unit of the ground field as a root of unity times a monomial in labelled
/// free generators. Group law: add exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawUnitValue")]
pub struct UnitValue {
    /// `exp(2πi·root[0]/root[1])`, reduced with `0 ≤ root[0] < root[1]`.
    root: [i64; 2],
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    free: BTreeMap<String, i64>,
}

#[derive(Deserialize)]
struct RawUnitValue {
    #[serde(default = "default_root")]
    root: [i64; 2],
    #[serde(default)]
    free: BTreeMap<String, i64>,
}

fn default_root() -> [i64; 2] {
    [0, 1]
}

impl TryFrom<RawUnitValue> for UnitValue {
    type Error = Error;
    fn try_from(r: RawUnitValue) -> Result<Self> {
        let mut v = UnitValue::root_of_unity(r.root[0], r.root[1])?;
        for (k, e) in r.free {
            v = v.mul(&UnitValue::generator(&k, e));
        }
        Ok(v)
    }
}

impl Default for UnitValue {
    fn default() -> Self {
        Self::one()
    }
}

impl UnitValue {
    pub fn one() -> Self {
        UnitValue { root: [0, 1], free: BTreeMap::new() }
    }

    pub fn root_of_unity(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::Parse(format!("root of unity needs a positive denominator, got {}", den)));
        }
        let g = num.gcd(&den);
        let (n, d) = (num / g, den / g);
        Ok(UnitValue { root: [n.rem_euclid(d), d], free: BTreeMap::new() })
    }

    /// `-1`.
    pub fn minus_one() -> Self {
        Self::root_of_unity(1, 2).expect("valid root")
    }

    pub fn generator(label: &str, exponent: i64) -> Self {
        let mut free = BTreeMap::new();
        if exponent != 0 {
            free.insert(label.to_string(), exponent);
        }
        UnitValue { root: [0, 1], free }
    }

    pub fn root(&self) -> (i64, i64) {
        (self.root[0], self.root[1])
    }

    pub fn free_part(&self) -> &BTreeMap<String, i64> {
        &self.free
    }

    pub fn is_one(&self) -> bool {
        self.root[0] == 0 && self.free.is_empty()
    }

    pub fn mul(&self, other: &UnitValue) -> UnitValue {
        let den = self.root[1].lcm(&other.root[1]);
        let num = self.root[0] * (den / self.root[1]) + other.root[0] * (den / other.root[1]);
        let mut out = UnitValue::root_of_unity(num, den).expect("positive denominator");
        out.free = self.free.clone();
        for (k, e) in &other.free {
            let v = out.free.entry(k.clone()).or_insert(0);
            *v += e;
            if *v == 0 {
                out.free.remove(k);
            }
        }
        out
    }

    pub fn inverse(&self) -> UnitValue {
        let mut out = UnitValue::root_of_unity(-self.root[0], self.root[1]).expect("positive denominator");
        out.free = self.free.iter().map(|(k, e)| (k.clone(), -e)).collect();
        out
    }

    pub fn pow(&self, k: i64) -> UnitValue {
        let mut out = UnitValue::root_of_unity(self.root[0] * k, self.root[1]).expect("positive denominator");
        if k != 0 {
            out.free = self.free.iter().map(|(l, e)| (l.clone(), e * k)).collect();
        }
        out
    }

    /// Torsion exponent at level `n` (`ζ_n^t`), if the root lies in `μ_n`.
    pub fn torsion_at(&self, n: &Int) -> Option<Int> {
        let den = Int::from(self.root[1]);
        if !(n % &den).is_zero() {
            return None;
        }
        Some(Int::from(self.root[0]) * (n / den))
    }
}

impl std::fmt::Display for UnitValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.root[0] != 0 {
            if self.root == [1, 2] {
                parts.push("-1".to_string());
            } else {
                parts.push(format!("ζ{}^{}", self.root[1], self.root[0]));
            }
        }
        for (k, e) in &self.free {
            parts.push(if *e == 1 { k.clone() } else { format!("{}^{}", k, e) });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

/// How the multiplicative group of the ground field is modelled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum UnitModel {
    /// `μ_N ⊕ Z^r` with trivial action; free generators are assumed independent.
    Fg {
        torsion: u64,
        #[serde(rename = "free_generators", default)]
        free: Vec<String>,
    },
    /// An algebraically closed field of characteristic zero: coefficients in
    /// `Q/Z ⊗ 𝔛`, reported through the Bockstein shift to `𝔛`.
    Divisible,
}

impl UnitModel {
    pub fn fg(torsion: u64, free: &[&str]) -> Self {
        UnitModel::Fg { torsion, free: free.iter().map(|s| s.to_string()).collect() }
    }

    pub fn is_divisible(&self) -> bool {
        matches!(self, UnitModel::Divisible)
    }

    pub fn describe(&self) -> String {
        match self {
            UnitModel::Fg { torsion, free } if free.is_empty() => format!("fg(μ{})", torsion),
            UnitModel::Fg { torsion, free } => format!("fg(μ{} ⊕ Z<{}>)", torsion, free.join(",")),
            UnitModel::Divisible => "divisible".into(),
        }
    }
}
