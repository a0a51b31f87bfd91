//! Exact arithmetic in the cyclotomic field Q(zeta_N).
//!
//! Elements are stored in the power basis `1, z, z^2, ..., z^(phi(N)-1)`
//! reduced modulo the N-th cyclotomic polynomial, so equality is
//! coefficient-wise.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Default field order: Q(zeta_60) contains i, omega and sqrt(5).
pub const DEFAULT_ORDER: u32 = 60;

struct FieldData {
    order: u32,
    degree: usize,
    /// Monic cyclotomic polynomial, lowest coefficient first, length `degree + 1`.
    modulus: Vec<i64>,
    /// `z^k` reduced into the power basis, for `k < order`.
    powers: Vec<Vec<i64>>,
}

/// Handle to a cyclotomic field; cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.0.order)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.order == other.0.order
    }
}

impl Eq for Field {}

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().unwrap();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd] / lead;
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn cyclotomic_polynomial(n: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod_{d | n} Phi_d(x)
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d, cache);
            num = poly_divide_exact(&num, &phi_d);
        }
    }
    cache.insert(n, num.clone());
    num
}

fn field_registry() -> &'static Mutex<HashMap<u32, Field>> {
    static REGISTRY: OnceLock<Mutex<HashMap<u32, Field>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// The field Q(zeta_order). Fields are interned, so repeated calls are cheap.
    pub fn new(order: u32) -> Field {
        assert!(order >= 1, "cyclotomic order must be positive");
        let mut reg = field_registry().lock().unwrap();
        if let Some(f) = reg.get(&order) {
            return f.clone();
        }
        let mut cache = HashMap::new();
        let modulus = cyclotomic_polynomial(order, &mut cache);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by z
            let top = cur[degree - 1];
            for j in (1..degree).rev() {
                cur[j] = cur[j - 1] - top * modulus[j];
            }
            cur[0] = -top * modulus[0];
        }
        let field = Field(Arc::new(FieldData { order, degree, modulus, powers }));
        reg.insert(order, field.clone());
        field
    }

    pub fn default_field() -> Field {
        Field::new(DEFAULT_ORDER)
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// phi(N), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn modulus(&self) -> &[i64] {
        &self.0.modulus
    }

    pub(crate) fn power_row(&self, k: usize) -> &[i64] {
        &self.0.powers[k % self.0.order as usize]
    }

    pub fn zero(&self) -> CycloRational {
        CycloRational { field: self.clone(), coeffs: vec![BigRational::zero(); self.degree()] }
    }

    pub fn one(&self) -> CycloRational {
        self.rational(BigRational::one())
    }

    pub fn rational(&self, q: BigRational) -> CycloRational {
        let mut x = self.zero();
        x.coeffs[0] = q;
        x
    }

    pub fn integer(&self, n: i64) -> CycloRational {
        self.rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `zeta_N^k`.
    pub fn zeta_pow(&self, k: i64) -> CycloRational {
        let n = self.order() as i64;
        let row = self.power_row(k.rem_euclid(n) as usize);
        CycloRational {
            field: self.clone(),
            coeffs: row.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        }
    }

    /// A primitive `root`-th root of unity, `exp(2 pi i / root)`, if the field contains one.
    pub fn root_of_unity(&self, root: u32) -> Result<CycloRational, AlgebraError> {
        let n = self.order();
        if !n.is_multiple_of(root) {
            return Err(AlgebraError::OutsideField {
                value: format!("exp(2 pi i/{root})"),
                required_order: num_integer::lcm(n, root),
            });
        }
        Ok(self.zeta_pow((n / root) as i64))
    }

    fn reduce(&self, mut v: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        let m = &self.0.modulus;
        if v.len() > d {
            for i in (d..v.len()).rev() {
                if v[i].is_zero() {
                    continue;
                }
                let c = std::mem::replace(&mut v[i], BigRational::zero());
                for (j, &mj) in m.iter().enumerate().take(d) {
                    if mj != 0 {
                        v[i - d + j] -= &c * BigRational::from_integer(BigInt::from(mj));
                    }
                }
            }
            v.truncate(d);
        }
        v.resize(d, BigRational::zero());
        v
    }
}

/// An exact element of a cyclotomic field.
#[derive(Clone)]
pub struct CycloRational {
    field: Field,
    coeffs: Vec<BigRational>,
}

impl CycloRational {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<BigRational>) -> CycloRational {
        let coeffs = field.reduce(coeffs);
        CycloRational { field: field.clone(), coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `Some(q)` when the element is the rational number q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_field(&self, other: &CycloRational) {
        assert!(
            self.field == other.field,
            "mixed cyclotomic fields: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    /// Complex conjugation, `z -> z^-1`.
    pub fn conj(&self) -> CycloRational {
        let n = self.field.order() as usize;
        let d = self.field.degree();
        let mut out = vec![BigRational::zero(); d];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = self.field.power_row((n - j) % n);
            for (t, &r) in row.iter().enumerate() {
                if r != 0 {
                    out[t] += c * BigRational::from_integer(BigInt::from(r));
                }
            }
        }
        CycloRational { field: self.field.clone(), coeffs: out }
    }

    pub fn mul_ref(&self, other: &CycloRational) -> CycloRational {
        self.check_field(other);
        let d = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycloRational { field: self.field.clone(), coeffs: self.field.reduce(prod) }
    }

    /// Multiplicative inverse by solving `self * x = 1` against the
    /// multiplication matrix.
    pub fn inverse(&self) -> Result<CycloRational, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.rational(q.recip()));
        }
        let d = self.field.degree();
        // column j of the matrix is self * z^j
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let zj = self.field.zeta_pow(j as i64);
            cols.push(self.mul_ref(&zj).coeffs);
        }
        // augmented rows: [M | e0]
        let mut rows: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..d).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| !rows[r][col].is_zero())
                .expect("multiplication matrix of a nonzero field element is invertible");
            rows.swap(col, pivot);
            let inv = rows[col][col].recip();
            for x in rows[col].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        if !p.is_zero() {
                            *x -= &f * p;
                        }
                    }
                }
            }
        }
        let coeffs = rows.into_iter().map(|mut r| r.pop().unwrap()).collect();
        Ok(CycloRational { field: self.field.clone(), coeffs })
    }

    pub fn checked_div(&self, other: &CycloRational) -> Result<CycloRational, AlgebraError> {
        Ok(self.mul_ref(&other.inverse()?))
    }

    pub fn pow(&self, e: i64) -> Result<CycloRational, AlgebraError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Ok(acc)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()))
    }

    pub fn max_abs_coeff(&self) -> BigRational {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero)
    }
}

impl PartialEq for CycloRational {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}

impl Eq for CycloRational {}

impl Hash for CycloRational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.coeffs.hash(state);
    }
}

/// Lexicographic on the power-basis coefficients. This is a deterministic
/// total order, not a numeric one.
impl Ord for CycloRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field.order().cmp(&other.field.order()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for CycloRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::expr::format_component(self))
    }
}

impl fmt::Display for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::expr::format_component(self))
    }
}

impl<'a> Add<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;
    fn add(self, rhs: &CycloRational) -> CycloRational {
        self.check_field(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CycloRational { field: self.field.clone(), coeffs }
    }
}

impl<'a> Sub<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;
    fn sub(self, rhs: &CycloRational) -> CycloRational {
        self.check_field(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CycloRational { field: self.field.clone(), coeffs }
    }
}

impl<'a> Mul<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;
    fn mul(self, rhs: &CycloRational) -> CycloRational {
        self.mul_ref(rhs)
    }
}

/// Panics on a zero divisor; use [`CycloRational::checked_div`] otherwise.
impl<'a> Div<&'a CycloRational> for &'a CycloRational {
    type Output = CycloRational;
    fn div(self, rhs: &CycloRational) -> CycloRational {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &CycloRational {
    type Output = CycloRational;
    fn neg(self) -> CycloRational {
        CycloRational { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for CycloRational {
    type Output = CycloRational;
    fn add(self, rhs: CycloRational) -> CycloRational {
        &self + &rhs
    }
}

impl Sub for CycloRational {
    type Output = CycloRational;
    fn sub(self, rhs: CycloRational) -> CycloRational {
        &self - &rhs
    }
}

impl Mul for CycloRational {
    type Output = CycloRational;
    fn mul(self, rhs: CycloRational) -> CycloRational {
        self.mul_ref(&rhs)
    }
}

impl Neg for CycloRational {
    type Output = CycloRational;
    fn neg(self) -> CycloRational {
        -&self
    }
}
