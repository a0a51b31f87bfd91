use std::fmt;

use super::field::CycloRational;
use super::AlgebraError;

/// A projective class of nonzero vectors, stored with its first nonzero
/// entry scaled to 1. Proportional vectors normalize to equal rays.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ray {
    entries: Vec<CycloRational>,
}

impl Ray {
    pub fn entries(&self) -> &[CycloRational] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    /// Wrap entries that are already normalized. Debug builds check it.
    pub(crate) fn from_normalized(entries: Vec<CycloRational>) -> Ray {
        debug_assert!(entries.iter().find(|e| !e.is_zero()).is_some_and(|e| e.is_one()));
        Ray { entries }
    }
}

impl fmt::Debug for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Divide by the first nonzero entry.
pub fn normalize_ray(v: &[CycloRational]) -> Result<Ray, AlgebraError> {
    let lead = v.iter().find(|x| !x.is_zero()).ok_or(AlgebraError::ZeroVector)?;
    if lead.is_one() {
        return Ok(Ray { entries: v.to_vec() });
    }
    let inv = lead.inverse()?;
    Ok(Ray { entries: v.iter().map(|x| x * &inv).collect() })
}

/// `sum conj(a_i) * b_i`.
pub fn hermitian_inner(a: &[CycloRational], b: &[CycloRational]) -> Result<CycloRational, AlgebraError> {
    if a.len() != b.len() {
        return Err(AlgebraError::DimensionMismatch(a.len(), b.len()));
    }
    let first = a.first().ok_or(AlgebraError::DimensionMismatch(0, 0))?;
    let mut acc = first.field().zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = &acc + &(&x.conj() * y);
    }
    Ok(acc)
}

pub fn orthogonal(a: &Ray, b: &Ray) -> Result<bool, AlgebraError> {
    Ok(hermitian_inner(a.entries(), b.entries())?.is_zero())
}
