use std::collections::HashMap;

use crate::algebra::{parse_component_list, AlgebraError, CycloRational, Field, Ray};

use super::MasterError;

/// The vector component values allowed in a coordinatization.
#[derive(Debug, Clone)]
pub struct ComponentSet {
    field: Field,
    values: Vec<CycloRational>,
    dimension: usize,
}

impl ComponentSet {
    pub fn new(field: &Field, values: Vec<CycloRational>, dimension: usize) -> Result<ComponentSet, MasterError> {
        if dimension == 0 {
            return Err(MasterError::Dimension);
        }
        let mut uniq: Vec<CycloRational> = Vec::new();
        for v in values {
            if !uniq.contains(&v) {
                uniq.push(v);
            }
        }
        if !uniq.iter().any(|v| !v.is_zero()) {
            return Err(MasterError::NoNonzeroComponent);
        }
        Ok(ComponentSet { field: field.clone(), values: uniq, dimension })
    }

    /// Parse a list such as `"0,1,-1,i,-i"`.
    pub fn parse(list: &str, dimension: usize, field: &Field) -> Result<ComponentSet, MasterError> {
        let values = parse_component_list(field, list)?;
        ComponentSet::new(field, values, dimension)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn values(&self) -> &[CycloRational] {
        &self.values
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }
}

/// Every nonzero n-tuple over the components, reduced to distinct rays and
/// sorted lexicographically. Normalized rays may contain entries that are
/// not themselves components (e.g. ratios of two components).
pub fn enumerate_rays(c: &ComponentSet, tuple_limit: u64) -> Result<Vec<Ray>, MasterError> {
    let q = c.values.len();
    let n = c.dimension;
    let total = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > tuple_limit as u128 {
        return Err(MasterError::TupleLimit { tuples: total, limit: tuple_limit });
    }

    // ratio[x][lead] = value[x] / value[lead], interned to small ids
    let mut ids: HashMap<CycloRational, u32> = HashMap::new();
    let mut interned: Vec<CycloRational> = Vec::new();
    let mut ratio = vec![vec![u32::MAX; q]; q];
    for lead in 0..q {
        if c.values[lead].is_zero() {
            continue;
        }
        let inv = c.values[lead].inverse().map_err(MasterError::Algebra)?;
        for (x, row) in ratio.iter_mut().enumerate() {
            let v = &c.values[x] * &inv;
            let next = interned.len() as u32;
            let id = *ids.entry(v.clone()).or_insert_with(|| {
                interned.push(v);
                next
            });
            row[lead] = id;
        }
    }

    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    let mut keys: Vec<Vec<u32>> = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        if let Some(lead_pos) = digits.iter().position(|&d| !c.values[d].is_zero()) {
            let lead = digits[lead_pos];
            let key: Vec<u32> = digits.iter().map(|&d| ratio[d][lead]).collect();
            if seen.insert(key.clone(), ()).is_none() {
                keys.push(key);
            }
        }
        // odometer
        let mut pos = n;
        loop {
            if pos == 0 {
                let mut rays: Vec<Ray> = keys
                    .into_iter()
                    .map(|k| {
                        let entries: Vec<CycloRational> = k.iter().map(|&id| interned[id as usize].clone()).collect();
                        Ray::from_normalized(entries)
                    })
                    .collect();
                rays.sort();
                return Ok(rays);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
        }
    }
}

impl From<AlgebraError> for MasterError {
    fn from(e: AlgebraError) -> Self {
        MasterError::Algebra(e)
    }
}
