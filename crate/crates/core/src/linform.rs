//! Affine-linear forms `c + Σ k_v · v` in named unknowns.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyalg::write_terms;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LinearForm {
    constant: Scalar,
    coeffs: BTreeMap<String, Scalar>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn constant(c: Scalar) -> Self {
        LinearForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn var(name: &str) -> Self {
        LinearForm::term(name, Scalar::from_int(1))
    }

    pub fn term(name: &str, c: Scalar) -> Self {
        let mut f = LinearForm::zero();
        f.add_term(name, c);
        f
    }

    pub fn add_term(&mut self, name: &str, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(name.to_string()) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn constant_term(&self) -> &Scalar {
        &self.constant
    }

    pub fn coeffs(&self) -> &BTreeMap<String, Scalar> {
        &self.coeffs
    }

    pub fn coeff(&self, name: &str) -> Scalar {
        self.coeffs.get(name).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = LinearForm::constant(&self.constant * c);
        for (k, v) in &self.coeffs {
            out.add_term(k, v * c);
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = LinearForm::constant(self.constant.conj());
        for (k, v) in &self.coeffs {
            out.add_term(k, v.conj());
        }
        out
    }

    /// Product, defined when at least one factor is constant.
    pub fn try_mul(&self, o: &LinearForm) -> Result<Self> {
        if o.is_constant() {
            Ok(self.scale(&o.constant))
        } else if self.is_constant() {
            Ok(o.scale(&self.constant))
        } else {
            Err(Error::Precondition(format!(
                "product ({self})*({o}) is not linear"
            )))
        }
    }

    /// `Some(t)` with `self = t · other`, if the forms are proportional.
    pub fn ratio_to(&self, other: &LinearForm) -> Option<Scalar> {
        if other.is_zero() {
            return self.is_zero().then(Scalar::zero);
        }
        let t = if !other.constant.is_zero() {
            &self.constant / &other.constant
        } else {
            let (k, v) = other.coeffs.iter().next()?;
            &self.coeff(k) / v
        };
        (other.scale(&t) == *self).then_some(t)
    }

    /// Substitutes values for some unknowns.
    pub fn substitute(&self, values: &BTreeMap<String, Scalar>) -> Self {
        let mut out = LinearForm::constant(self.constant.clone());
        for (k, v) in &self.coeffs {
            match values.get(k) {
                Some(x) => out.constant += &(v * x),
                None => out.add_term(k, v.clone()),
            }
        }
        out
    }
}

impl<'a> std::ops::Add<&'a LinearForm> for &'a LinearForm {
    type Output = LinearForm;

    fn add(self, o: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        out.constant += &o.constant;
        for (k, v) in &o.coeffs {
            out.add_term(k, v.clone());
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a LinearForm> for &'a LinearForm {
    type Output = LinearForm;

    fn sub(self, o: &LinearForm) -> LinearForm {
        self + &-o
    }
}

impl std::ops::Neg for &LinearForm {
    type Output = LinearForm;

    fn neg(self) -> LinearForm {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearForm({self})")
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(String, &Scalar)> =
            self.coeffs.iter().map(|(k, v)| (k.clone(), v)).collect();
        if !self.constant.is_zero() {
            terms.push((String::new(), &self.constant));
        }
        write_terms(f, &terms)
    }
}
