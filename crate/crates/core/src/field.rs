//! Finite fields `F_q`, `q = p^m`, with exact arithmetic.
//!
//! Elements are encoded as integers `0..q`: the element `c_0 + c_1 t + ... + c_{m-1} t^{m-1}`
//! of `F_p[t]/(f)` is stored as `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. The prime field sits
//! inside as `0..p`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Field element, encoded as described in the module docs.
pub type Elem = u32;

/// Largest field order we build tables for.
const MAX_ORDER: u32 = 1 << 16;

struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    min_poly: Vec<u32>,
    // Only populated for proper extensions; prime fields use modular arithmetic directly.
    log: Vec<u32>,
    exp: Vec<u32>,
    inv: Vec<u32>,
}

/// A finite field. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.m == other.0.m && self.0.min_poly == other.0.min_poly
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(
                f,
                "F_{}^{} (min_poly {:?})",
                self.0.p, self.0.m, self.0.min_poly
            )
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    // Fermat; p is prime and small.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

// Polynomials over F_p as coefficient vectors, low degree first, no trailing zeros.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let lead_inv = mod_inverse(*b.last().unwrap(), p);
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn monic_polys(degree: u32, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = p.pow(degree);
    (0..count).map(move |mut code| {
        let mut coeffs = Vec::with_capacity(degree as usize + 1);
        for _ in 0..degree {
            coeffs.push(code % p);
            code /= p;
        }
        coeffs.push(1);
        coeffs
    })
}

/// Irreducibility of a monic polynomial over `F_p` by trial division.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() as u32 - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for g in monic_polys(d, p) {
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of the given degree, comparing the
/// coefficient list `[c_0, c_1, ..., c_{m-1}]` from the constant term upwards.
pub fn smallest_irreducible(degree: u32, p: u32) -> Vec<u32> {
    let mut candidates: Vec<Vec<u32>> = monic_polys(degree, p).collect();
    candidates.sort();
    candidates
        .into_iter()
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1)
    }

    /// `F_{p^m}` built from the lexicographically smallest monic irreducible of degree `m`.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::Usage(format!(
                "field characteristic {p} is not prime"
            )));
        }
        if m == 0 {
            return Err(Error::Usage("extension degree must be at least 1".into()));
        }
        let min_poly = if m == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(m, p)
        };
        Field::with_min_poly(p, min_poly)
    }

    /// Extension given by an explicit monic irreducible (low degree first).
    pub fn with_min_poly(p: u32, min_poly: Vec<u32>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::Usage(format!(
                "field characteristic {p} is not prime"
            )));
        }
        let m = min_poly.len() as u32 - 1;
        if m == 0 || min_poly.last() != Some(&1) || min_poly.iter().any(|&c| c >= p) {
            return Err(Error::Usage(
                "minimal polynomial must be monic with reduced coefficients".into(),
            ));
        }
        if m > 1 && !is_irreducible(&min_poly, p) {
            return Err(Error::Usage(format!(
                "{min_poly:?} is not irreducible over F_{p}"
            )));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::Usage(format!("field F_{p}^{m} is too large")))?;
        let mut data = FieldData {
            p,
            m,
            q,
            min_poly,
            log: vec![],
            exp: vec![],
            inv: vec![],
        };
        if m == 1 {
            data.inv = (0..p)
                .map(|a| if a == 0 { 0 } else { mod_inverse(a, p) })
                .collect();
        } else {
            build_tables(&mut data);
        }
        Ok(Field(Arc::new(data)))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn ext_degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn min_poly(&self) -> &[u32] {
        &self.0.min_poly
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    /// The prime subfield.
    pub fn prime_subfield(&self) -> Field {
        if self.is_prime_field() {
            self.clone()
        } else {
            Field::prime(self.0.p).expect("characteristic is prime")
        }
    }

    /// Reduce an integer into the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }

    /// Iterate over all elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        if d.m == 1 {
            let s = a + b;
            if s >= d.p {
                s - d.p
            } else {
                s
            }
        } else {
            let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
            while a > 0 || b > 0 {
                out += ((a % d.p + b % d.p) % d.p) * place;
                a /= d.p;
                b /= d.p;
                place *= d.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let d = &*self.0;
        if d.m == 1 {
            if a == 0 {
                0
            } else {
                d.p - a
            }
        } else {
            let (mut a, mut out, mut place) = (a, 0, 1);
            while a > 0 {
                out += ((d.p - a % d.p) % d.p) * place;
                a /= d.p;
                place *= d.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        if d.m == 1 {
            ((a as u64 * b as u64) % d.p as u64) as Elem
        } else if a == 0 || b == 0 {
            0
        } else {
            let s = (d.log[a as usize] + d.log[b as usize]) % (d.q - 1);
            d.exp[s as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            None
        } else {
            Some(self.0.inv[a as usize])
        }
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius `a ↦ a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p as u64)
    }

    /// The coefficient vector of an element over the prime field.
    pub fn coordinates(&self, a: Elem) -> Vec<u32> {
        let mut a = a;
        (0..self.0.m)
            .map(|_| {
                let c = a % self.0.p;
                a /= self.0.p;
                c
            })
            .collect()
    }

    pub fn format_elem(&self, a: Elem) -> String {
        if self.is_prime_field() {
            return a.to_string();
        }
        let coords = self.coordinates(a);
        let terms: Vec<String> = coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}*t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn build_tables(d: &mut FieldData) {
    let (p, m, q) = (d.p, d.m as usize, d.q);
    // Multiply encoded elements as polynomials mod min_poly (slow path, table construction only).
    let decode = |mut a: u32| -> Vec<u32> {
        (0..m)
            .map(|_| {
                let c = a % p;
                a /= p;
                c
            })
            .collect()
    };
    let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
    let slow_mul = |a: u32, b: u32| -> u32 {
        let (a, b) = (decode(a), decode(b));
        let mut prod = vec![0u32; 2 * m];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        let mut r = poly_rem(&prod, &d.min_poly, p);
        r.resize(m, 0);
        encode(&r)
    };
    let mut generator = None;
    for g in 2..q {
        let mut x = 1;
        let mut order = 0;
        loop {
            x = slow_mul(x, g);
            order += 1;
            if x == 1 {
                break;
            }
        }
        if order == q - 1 {
            generator = Some(g);
            break;
        }
    }
    // q > 2 here because m > 1.
    let g = generator.expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; q as usize - 1];
    let mut log = vec![0u32; q as usize];
    let mut x = 1;
    for (k, slot) in exp.iter_mut().enumerate() {
        *slot = x;
        log[x as usize] = k as u32;
        x = slow_mul(x, g);
    }
    let mut inv = vec![0u32; q as usize];
    for a in 1..q {
        let l = log[a as usize];
        inv[a as usize] = exp[((q - 1 - l) % (q - 1)) as usize];
    }
    d.exp = exp;
    d.log = log;
    d.inv = inv;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(2, 3), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn rejects_non_prime() {
        assert!(Field::new(4, 1).is_err());
        assert!(Field::new(2, 0).is_err());
    }

    #[test]
    fn f4_arithmetic_matches_hand_table() {
        let f = Field::new(2, 2).unwrap();
        // t = 2, t^2 = t + 1 = 3
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.add(2, 3), 1);
        assert_eq!(f.inv(3), Some(2));
        assert_eq!(f.frobenius(2), 3);
    }

    fn field_strategy() -> impl Strategy<Value = Field> {
        prop::sample::select(vec![(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3), (5, 2)])
            .prop_map(|(p, m)| Field::new(p, m).unwrap())
    }

    proptest! {
        #[test]
        fn field_axioms(f in field_strategy(), a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
            let q = f.order();
            let (a, b, c) = (a % q, b % q, c % q);
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            prop_assert_eq!(f.pow(a, q as u64), a);
        }
    }
}
