//! JSON wire format for polynomials.
//!
//! `{"vars":[...],"terms":[{"exp":[...],"coeff":{"a":"p/q","b":..,"c":..,"d":..}}]}`
//! with terms in lexicographic exponent order.

use serde::{Deserialize, Serialize};

use super::coeff::{CoeffQi2, CoeffWire};
use super::poly::{var_names, Poly};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct TermWire {
    exp: Vec<u32>,
    coeff: CoeffWire,
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    vars: Vec<String>,
    terms: Vec<TermWire>,
}

fn to_wire<const N: usize>(p: &Poly<N>) -> PolyWire {
    PolyWire {
        vars: var_names::<N>().iter().map(|s| s.to_string()).collect(),
        terms: p
            .terms()
            .map(|(e, c)| TermWire {
                exp: e.to_vec(),
                coeff: CoeffWire::from(c),
            })
            .collect(),
    }
}

impl<const N: usize> Poly<N> {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(to_wire(self)).expect("polynomial serializes")
    }

    /// Compact single-line JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&to_wire(self)).expect("polynomial serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let w: PolyWire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let names = var_names::<N>();
        if w.vars.len() != N || w.vars.iter().zip(names).any(|(a, b)| a != b) {
            return Err(Error::Parse(format!("expected vars {names:?}, got {:?}", w.vars)));
        }
        let mut terms = Vec::with_capacity(w.terms.len());
        for t in w.terms {
            let exp: [u32; N] = t
                .exp
                .try_into()
                .map_err(|_| Error::Parse("exponent arity mismatch".into()))?;
            terms.push((exp, CoeffQi2::try_from(t.coeff)?));
        }
        Ok(Poly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use crate::exactring::{CoeffQi2, Poly2, Poly4};

    #[test]
    fn round_trip() {
        let p = &(&Poly4::xi() * &Poly4::xi_star()) - &Poly4::constant(CoeffQi2::sqrt2());
        let s = p.to_json();
        let q = Poly4::from_json(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(q.to_json(), s);
        assert!(s.starts_with(r#"{"vars":["z","zbar","w","wbar"],"terms":[{"exp":[0,0,0,0],"coeff":{"a":"0/1","b":"0/1","c":"-1/1","d":"0/1"}}"#));
    }

    #[test]
    fn rejects_wrong_vars() {
        let s = Poly2::u().to_json();
        assert!(Poly4::from_json(&s).is_err());
        assert!(Poly2::from_json(&s).is_ok());
    }
}
