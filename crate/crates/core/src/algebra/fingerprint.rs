//! Fast exact orthogonality tests over a fixed list of rays.
//!
//! Each ray is mapped into a prime field F_p (p = 1 mod N) by sending
//! zeta_N to a primitive N-th root of unity. A nonzero residue proves the
//! inner product is nonzero. A zero residue is confirmed with exact
//! integer polynomial arithmetic, so no decision relies on the hash alone.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::field::{CycloRational, Field};
use super::ray::{hermitian_inner, Ray};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Homomorphism Z[zeta_N] -> F_p.
#[derive(Debug, Clone)]
pub struct ModP {
    p: u64,
    /// `g^j` for j < N, g a primitive N-th root of unity mod p.
    powers: Vec<u64>,
}

impl ModP {
    pub fn for_field(field: &Field) -> ModP {
        let n = field.order() as u64;
        let mut k = (1u64 << 61) / n;
        let p = loop {
            let cand = k * n + 1;
            if is_prime_u64(cand) {
                break cand;
            }
            k -= 1;
        };
        let factors = prime_factors(n);
        let g = (2u64..)
            .map(|a| pow_mod(a, (p - 1) / n, p))
            .find(|&g| g != 1 && factors.iter().all(|&q| pow_mod(g, n / q, p) != 1))
            .expect("F_p contains primitive roots");
        let powers = (0..n).map(|j| pow_mod(g, j, p)).collect();
        ModP { p, powers }
    }

    fn rational(&self, q: &BigRational) -> u64 {
        let p = BigInt::from(self.p);
        let num = (q.numer() % &p + &p) % &p;
        let den = (q.denom() % &p + &p) % &p;
        let num = num.to_u64().unwrap();
        let den = den.to_u64().unwrap();
        assert!(den != 0, "denominator divisible by the fingerprint prime");
        mul_mod(num, pow_mod(den, self.p - 2, self.p), self.p)
    }

    /// Residue of `x` and of `conj(x)`.
    pub fn residues(&self, x: &CycloRational) -> (u64, u64) {
        let n = self.powers.len();
        let mut v = 0u64;
        let mut c = 0u64;
        for (j, q) in x.coeffs().iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let r = self.rational(q);
            v = (v + mul_mod(r, self.powers[j], self.p)) % self.p;
            c = (c + mul_mod(r, self.powers[(n - j) % n], self.p)) % self.p;
        }
        (v, c)
    }
}

/// Integer coefficient form of a ray scaled by a positive rational.
#[derive(Debug, Clone)]
struct IntegralRay {
    entries: Vec<Vec<i64>>,
    conj: Vec<Vec<i64>>,
}

fn integral_form(ray: &Ray) -> Option<IntegralRay> {
    let lcm = ray
        .entries()
        .iter()
        .fold(BigInt::from(1), |acc, e| num_integer::Integer::lcm(&acc, &e.denominator_lcm()));
    let scale = BigRational::from_integer(lcm);
    let to_ints = |x: &CycloRational| -> Option<Vec<i64>> {
        x.coeffs()
            .iter()
            .map(|q| {
                let s = q * &scale;
                debug_assert!(s.is_integer());
                s.to_integer().to_i64().filter(|v| v.abs() < (1 << 20))
            })
            .collect()
    };
    let entries = ray.entries().iter().map(to_ints).collect::<Option<Vec<_>>>()?;
    let conj = ray.entries().iter().map(|e| to_ints(&e.conj())).collect::<Option<Vec<_>>>()?;
    Some(IntegralRay { entries, conj })
}

/// Orthogonality oracle over a fixed slice of rays.
pub struct RayTable {
    field: Field,
    rays: Vec<Ray>,
    modp: ModP,
    p: u64,
    /// per ray: residues of entries and of conjugated entries
    residues: Vec<(Vec<u64>, Vec<u64>)>,
    integral: Vec<Option<IntegralRay>>,
}

impl RayTable {
    pub fn new(field: &Field, rays: Vec<Ray>) -> RayTable {
        let modp = ModP::for_field(field);
        let residues = rays
            .iter()
            .map(|r| r.entries().iter().map(|e| modp.residues(e)).unzip())
            .collect();
        let integral = rays.iter().map(integral_form).collect();
        RayTable { field: field.clone(), p: modp.p, modp, rays, residues, integral }
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn into_rays(self) -> Vec<Ray> {
        self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn modp(&self) -> &ModP {
        &self.modp
    }

    fn residue_inner(&self, a: usize, b: usize) -> u64 {
        let (_, ca) = &self.residues[a];
        let (vb, _) = &self.residues[b];
        let mut acc = 0u128;
        for (x, y) in ca.iter().zip(vb) {
            acc += *x as u128 * *y as u128 % self.p as u128;
        }
        (acc % self.p as u128) as u64
    }

    fn exact_inner_is_zero(&self, a: usize, b: usize) -> bool {
        if let (Some(ia), Some(ib)) = (&self.integral[a], &self.integral[b]) {
            let d = self.field.degree();
            let mut prod = vec![0i128; 2 * d - 1];
            for (ca, eb) in ia.conj.iter().zip(&ib.entries) {
                for (i, &x) in ca.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in eb.iter().enumerate() {
                        prod[i + j] += x as i128 * y as i128;
                    }
                }
            }
            let m = self.field.modulus();
            for i in (d..prod.len()).rev() {
                let c = prod[i];
                if c != 0 {
                    for j in 0..d {
                        prod[i - d + j] -= c * m[j] as i128;
                    }
                    prod[i] = 0;
                }
            }
            return prod.iter().all(|&c| c == 0);
        }
        hermitian_inner(self.rays[a].entries(), self.rays[b].entries()).map(|x| x.is_zero()).unwrap_or(false)
    }

    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.residue_inner(a, b) == 0 && self.exact_inner_is_zero(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{normalize_ray, parse_component};

    fn ray(list: &[&str]) -> Ray {
        let v: Vec<_> = list.iter().map(|s| parse_component(s).unwrap()).collect();
        normalize_ray(&v).unwrap()
    }

    #[test]
    fn primes_are_recognized() {
        assert!(is_prime_u64(2_305_843_009_213_693_951));
        assert!(!is_prime_u64(2_305_843_009_213_693_953));
        assert!(is_prime_u64(61));
    }

    #[test]
    fn oracle_agrees_with_exact_inner_product() {
        let rays = vec![
            ray(&["1", "-1", "i", "-i"]),
            ray(&["1", "-1", "-i", "i"]),
            ray(&["1", "1", "1", "1"]),
            ray(&["0", "1", "(sqrt5-1)/2", "w"]),
            ray(&["1", "1", "-1", "-1"]),
        ];
        let t = RayTable::new(&Field::default_field(), rays.clone());
        for a in 0..rays.len() {
            for b in 0..rays.len() {
                let exact = hermitian_inner(rays[a].entries(), rays[b].entries()).unwrap().is_zero();
                assert_eq!(t.orthogonal(a, b), exact, "{a} {b}");
            }
        }
    }
}
