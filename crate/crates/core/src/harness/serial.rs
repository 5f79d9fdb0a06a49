//! JSON forms of the library objects.
//!
//! Rationals are strings `"num/den"`; on input a bare integer is accepted,
//! as a string or a JSON integer.
//! Polynomials are `{"basis": "monomial" | "pochhammer", "coeffs": [...]}`
//! with ascending index. Integer-shift operators are `{"coeffs": [poly, ...]}`
//! indexed by shift; rational-shift operators are
//! `{"shifts": [{"shift": r, "coeff": poly}, ...]}`. Sequences are
//! `{"values": [...]}` or `{"phi": poly}`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::operators::{DiagonalSequence, FiniteDifferenceOperator, Operator, ShiftCombination};
use crate::poly::{Basis, Polynomial, Rational};

pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

// Parses in place so errors carry the position of the offending value.
struct RationalDe(Rational);

impl<'de> Deserialize<'de> for RationalDe {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;

        impl serde::de::Visitor<'_> for V {
            type Value = RationalDe;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a rational \"num/den\" or an integer")
            }

            fn visit_str<E: serde::de::Error>(self, s: &str) -> Result<RationalDe, E> {
                parse_rational(s).map(RationalDe).map_err(E::custom)
            }

            fn visit_i64<E: serde::de::Error>(self, n: i64) -> Result<RationalDe, E> {
                Ok(RationalDe(Rational::from_integer(n.into())))
            }

            fn visit_u64<E: serde::de::Error>(self, n: u64) -> Result<RationalDe, E> {
                Ok(RationalDe(Rational::from_integer(n.into())))
            }
        }

        d.deserialize_any(V)
    }
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalDe::deserialize(d).map(|r| r.0)
    }
}

pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&format_rational(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Ok(Option::<RationalDe>::deserialize(d)?.map(|r| r.0))
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Ok(Vec::<RationalDe>::deserialize(d)?.into_iter().map(|r| r.0).collect())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum BasisRepr {
    Monomial,
    Pochhammer,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyRepr {
    basis: BasisRepr,
    #[serde(with = "rational_vec")]
    coeffs: Vec<Rational>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            basis: match self.basis() {
                Basis::Monomial => BasisRepr::Monomial,
                Basis::Pochhammer => BasisRepr::Pochhammer,
            },
            coeffs: self.coeffs().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        let basis = match r.basis {
            BasisRepr::Monomial => Basis::Monomial,
            BasisRepr::Pochhammer => Basis::Pochhammer,
        };
        Ok(Polynomial::new(basis, r.coeffs))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShiftTerm {
    #[serde(with = "rational")]
    shift: Rational,
    coeff: Polynomial,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OperatorRepr {
    Coeffs { coeffs: Vec<Polynomial> },
    Shifts { shifts: Vec<ShiftTerm> },
}

impl Serialize for FiniteDifferenceOperator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        OperatorRepr::Coeffs {
            coeffs: self.coeffs().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteDifferenceOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Operator::deserialize(d)? {
            Operator::Difference(t) => Ok(t),
            Operator::Shifted(_) => Err(D::Error::custom("expected integer shifts")),
        }
    }
}

impl Serialize for Operator {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Operator::Difference(t) => t.serialize(s),
            Operator::Shifted(t) => OperatorRepr::Shifts {
                shifts: t
                    .terms()
                    .iter()
                    .map(|(c, sh)| ShiftTerm {
                        shift: sh.clone(),
                        coeff: c.clone(),
                    })
                    .collect(),
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Operator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match OperatorRepr::deserialize(d)? {
            OperatorRepr::Coeffs { coeffs } => {
                Operator::Difference(FiniteDifferenceOperator::new(coeffs))
            }
            OperatorRepr::Shifts { shifts } => {
                let terms: Vec<_> = shifts.into_iter().map(|t| (t.coeff, t.shift)).collect();
                // integer non-negative shifts collapse to the standard form
                let integral = terms
                    .iter()
                    .all(|(_, s)| s.is_integer() && *s >= Rational::from_integer(0.into()));
                if integral {
                    let len = terms
                        .iter()
                        .map(|(_, s)| s.to_integer().try_into().unwrap_or(0usize) + 1)
                        .max()
                        .unwrap_or(0);
                    let mut coeffs = vec![Polynomial::zero(); len];
                    for (c, s) in terms {
                        let j: usize = s.to_integer().try_into().map_err(D::Error::custom)?;
                        coeffs[j] = &coeffs[j] + &c;
                    }
                    Operator::Difference(FiniteDifferenceOperator::new(coeffs))
                } else {
                    Operator::Shifted(ShiftCombination::new(terms))
                }
            }
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SequenceRepr {
    Values {
        #[serde(with = "rational_vec")]
        values: Vec<Rational>,
    },
    Phi {
        phi: Polynomial,
    },
}

impl Serialize for DiagonalSequence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DiagonalSequence::Table(v) => SequenceRepr::Values { values: v.clone() },
            DiagonalSequence::Phi(p) => SequenceRepr::Phi { phi: p.clone() },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagonalSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match SequenceRepr::deserialize(d)? {
            SequenceRepr::Values { values } => DiagonalSequence::Table(values),
            SequenceRepr::Phi { phi } => DiagonalSequence::Phi(phi),
        })
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("library values always serialize")
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("library values always serialize")
}

/// Parse, reporting the line and column of malformed input.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}
