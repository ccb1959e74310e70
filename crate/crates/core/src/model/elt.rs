//! Finitely supported three-valued functions under coordinatewise minimum.
//!
//! An element is a map `ω → {0,1,2}` equal to 2 outside a non-empty finite
//! set of coordinates, its support. Meet is pointwise minimum, so 2 acts as
//! a top value and supports stay finite: `supp(x·y) = supp(x) ∪ supp(y)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ModelError;

/// Coordinate index into the countable product.
pub type Coord = BigUint;

/// Value of a single coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TriVal {
    Zero,
    One,
    Two,
}

impl TriVal {
    pub fn min(self, other: TriVal) -> TriVal {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            TriVal::Zero => 0,
            TriVal::One => 1,
            TriVal::Two => 2,
        }
    }

    pub fn from_u8(v: u8) -> Result<TriVal, ModelError> {
        match v {
            0 => Ok(TriVal::Zero),
            1 => Ok(TriVal::One),
            2 => Ok(TriVal::Two),
            other => Err(ModelError::BadTriVal(other)),
        }
    }
}

impl Serialize for TriVal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.as_u8())
    }
}

impl<'de> Deserialize<'de> for TriVal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = u8::deserialize(d)?;
        TriVal::from_u8(v).map_err(D::Error::custom)
    }
}

/// A semilattice element: the finite support map.
///
/// Only coordinates carrying 0 or 1 are stored; everything else is 2.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elt {
    support: BTreeMap<Coord, TriVal>,
}

impl Elt {
    /// Builds an element from explicit (coordinate, value) pairs.
    pub fn from_support<I>(pairs: I) -> Result<Elt, ModelError>
    where
        I: IntoIterator<Item = (Coord, TriVal)>,
    {
        let mut support = BTreeMap::new();
        for (coord, val) in pairs {
            if val == TriVal::Two {
                return Err(ModelError::StoredTop);
            }
            support.insert(coord, val);
        }
        if support.is_empty() {
            return Err(ModelError::EmptySupport);
        }
        Ok(Elt { support })
    }

    /// The element with value 0 at `coord` and 2 elsewhere.
    pub fn zero_at<C: Into<Coord>>(coord: C) -> Elt {
        let mut support = BTreeMap::new();
        support.insert(coord.into(), TriVal::Zero);
        Elt { support }
    }

    /// The element with value 1 at `coord` and 2 elsewhere.
    pub fn one_at<C: Into<Coord>>(coord: C) -> Elt {
        let mut support = BTreeMap::new();
        support.insert(coord.into(), TriVal::One);
        Elt { support }
    }

    /// The singleton element with the given value (0 or 1) at `coord`.
    pub fn singleton<C: Into<Coord>>(coord: C, val: TriVal) -> Result<Elt, ModelError> {
        Elt::from_support([(coord.into(), val)])
    }

    pub fn get(&self, coord: &Coord) -> TriVal {
        self.support.get(coord).copied().unwrap_or(TriVal::Two)
    }

    pub fn support(&self) -> impl Iterator<Item = (&Coord, TriVal)> {
        self.support.iter().map(|(c, v)| (c, *v))
    }

    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    /// Pointwise minimum. The support of the result is the union of supports.
    pub fn meet(&self, other: &Elt) -> Elt {
        let mut support = self.support.clone();
        for (coord, val) in &other.support {
            support
                .entry(coord.clone())
                .and_modify(|v| *v = (*v).min(*val))
                .or_insert(*val);
        }
        Elt { support }
    }

    /// The induced partial order: `x ≤ y` iff `x·y = x`.
    pub fn leq(&self, other: &Elt) -> bool {
        other
            .support
            .iter()
            .all(|(coord, val)| self.get(coord) <= *val)
    }

    pub fn max_coord(&self) -> &Coord {
        // support is non-empty by construction
        self.support.keys().next_back().expect("non-empty support")
    }
}

impl fmt::Debug for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (coord, val)) in self.support.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{coord}:{}", val.as_u8())?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct EltRepr {
    support: Vec<(String, u8)>,
}

impl Serialize for Elt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = EltRepr {
            support: self
                .support
                .iter()
                .map(|(c, v)| (c.to_string(), v.as_u8()))
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Elt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = EltRepr::deserialize(d)?;
        let mut pairs = Vec::with_capacity(repr.support.len());
        for (coord, val) in repr.support {
            let coord: Coord = coord.parse().map_err(D::Error::custom)?;
            let val = TriVal::from_u8(val).map_err(D::Error::custom)?;
            pairs.push((coord, val));
        }
        Elt::from_support(pairs).map_err(D::Error::custom)
    }
}

/// An element of the semilattice with an adjoined identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdjoinedElt {
    /// The adjoined two-sided identity.
    Unit,
    Elem(Elt),
}

impl AdjoinedElt {
    pub fn is_unit(&self) -> bool {
        matches!(self, AdjoinedElt::Unit)
    }

    pub fn elem(&self) -> Option<&Elt> {
        match self {
            AdjoinedElt::Unit => None,
            AdjoinedElt::Elem(e) => Some(e),
        }
    }

    /// Meet inside the adjoined-identity extension.
    pub fn meet(&self, other: &AdjoinedElt) -> AdjoinedElt {
        match (self, other) {
            (AdjoinedElt::Unit, x) | (x, AdjoinedElt::Unit) => x.clone(),
            (AdjoinedElt::Elem(a), AdjoinedElt::Elem(b)) => AdjoinedElt::Elem(a.meet(b)),
        }
    }

    /// Applies the multiplier to a plain element.
    pub fn apply(&self, x: &Elt) -> Elt {
        match self {
            AdjoinedElt::Unit => x.clone(),
            AdjoinedElt::Elem(a) => a.meet(x),
        }
    }
}

impl From<Elt> for AdjoinedElt {
    fn from(e: Elt) -> AdjoinedElt {
        AdjoinedElt::Elem(e)
    }
}

impl fmt::Display for AdjoinedElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdjoinedElt::Unit => write!(f, "1"),
            AdjoinedElt::Elem(e) => write!(f, "{e}"),
        }
    }
}

impl Serialize for AdjoinedElt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AdjoinedElt::Unit => s.serialize_str("unit"),
            AdjoinedElt::Elem(e) => e.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for AdjoinedElt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Tag(String),
            Elem(Elt),
        }
        match Repr::deserialize(d)? {
            Repr::Tag(t) if t == "unit" => Ok(AdjoinedElt::Unit),
            Repr::Tag(t) => Err(D::Error::custom(format!("unknown multiplier tag {t:?}"))),
            Repr::Elem(e) => Ok(AdjoinedElt::Elem(e)),
        }
    }
}
