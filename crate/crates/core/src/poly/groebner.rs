//! Buchberger's algorithm over a prime field on plain commutative polynomials.
//!
//! Polynomials here are sorted term lists with no ring attached; the ring-aware layer in
//! [`super`] converts to and from this form.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

pub type Mono = Vec<u32>;
/// Terms sorted strictly descending in the active order, no zero coefficients.
pub type RawPoly = Vec<(Mono, Elem)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, variable 0 largest.
    GrevLex,
    /// The first `n` variables are eliminated: compare them by grevlex first, ties broken
    /// by grevlex on the remaining variables.
    Elimination(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Elimination(n) => {
                grevlex(&a[..n], &b[..n]).then_with(|| grevlex(&a[n..], &b[n..]))
            }
        }
    }
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn mono_div(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Sort, merge equal monomials and drop zeros.
pub fn normalize(field: &Field, order: MonomialOrder, mut terms: Vec<(Mono, Elem)>) -> RawPoly {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out: RawPoly = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
            _ => out.push((m, c)),
        }
        if out.last().is_some_and(|t| t.1 == 0) {
            out.pop();
        }
    }
    out
}

/// `f + c * m * g` for sorted inputs, merged in one pass.
fn add_scaled(
    field: &Field,
    order: MonomialOrder,
    f: &RawPoly,
    c: Elem,
    m: &[u32],
    g: &RawPoly,
) -> RawPoly {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let shifted: Vec<(Mono, Elem)> = g
        .iter()
        .map(|(gm, gc)| (mono_mul(gm, m), field.mul(*gc, c)))
        .collect();
    let (mut i, mut j) = (0, 0);
    while i < f.len() || j < shifted.len() {
        if j == shifted.len() {
            out.push(f[i].clone());
            i += 1;
        } else if i == f.len() {
            out.push(shifted[j].clone());
            j += 1;
        } else {
            match order.cmp(&f[i].0, &shifted[j].0) {
                Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.add(f[i].1, shifted[j].1);
                    if s != 0 {
                        out.push((f[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    out
}

pub fn make_monic(field: &Field, f: &mut RawPoly) {
    if let Some(&(_, c)) = f.first() {
        let inv = field.inv(c).expect("leading coefficient is nonzero");
        for t in f.iter_mut() {
            t.1 = field.mul(t.1, inv);
        }
    }
}

/// Full normal form of `f` modulo `basis` (every term reduced, not just the leading one).
pub fn normal_form(field: &Field, order: MonomialOrder, f: &RawPoly, basis: &[RawPoly]) -> RawPoly {
    let mut rest = f.clone();
    let mut remainder: RawPoly = Vec::new();
    while let Some((m, c)) = rest.first().cloned() {
        let divisor = basis.iter().find(|g| !g.is_empty() && divides(&g[0].0, &m));
        match divisor {
            Some(g) => {
                let (gm, gc) = &g[0];
                let factor = field.neg(field.mul(c, field.inv(*gc).unwrap()));
                rest = add_scaled(field, order, &rest, factor, &mono_div(&m, gm), g);
            }
            None => {
                remainder.push((m, c));
                rest.remove(0);
            }
        }
    }
    remainder
}

fn s_polynomial(field: &Field, order: MonomialOrder, f: &RawPoly, g: &RawPoly) -> RawPoly {
    let l = lcm(&f[0].0, &g[0].0);
    let fi = field.inv(f[0].1).unwrap();
    let gi = field.inv(g[0].1).unwrap();
    let a = add_scaled(field, order, &Vec::new(), fi, &mono_div(&l, &f[0].0), f);
    add_scaled(field, order, &a, field.neg(gi), &mono_div(&l, &g[0].0), g)
}

/// Reduced Gröbner basis, monic, sorted by increasing leading monomial.
///
/// `budget` caps the number of S-pairs reduced; exceeding it is a [`Error::Budget`].
pub fn groebner_basis(
    field: &Field,
    order: MonomialOrder,
    input: &[RawPoly],
    budget: usize,
) -> Result<Vec<RawPoly>> {
    let mut basis: Vec<RawPoly> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for f in input {
        let r = normal_form(field, order, f, &basis);
        if r.is_empty() {
            continue;
        }
        let mut r = r;
        make_monic(field, &mut r);
        let idx = basis.len();
        basis.push(r);
        pairs.extend((0..idx).map(|j| (j, idx)));
    }
    let mut processed = 0usize;
    while !pairs.is_empty() {
        // Normal selection strategy: smallest lcm first, ties by index for determinism.
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, &(a, b)), (_, &(c, d))| {
                let l1 = lcm(&basis[a][0].0, &basis[b][0].0);
                let l2 = lcm(&basis[c][0].0, &basis[d][0].0);
                order.cmp(&l1, &l2).then((a, b).cmp(&(c, d)))
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(pos);
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        // Product criterion.
        if li.iter().zip(lj.iter()).all(|(x, y)| *x == 0 || *y == 0) {
            continue;
        }
        processed += 1;
        if processed > budget {
            return Err(Error::Budget(format!(
                "Gröbner basis computation exceeded {budget} S-pairs"
            )));
        }
        let s = s_polynomial(field, order, &basis[i], &basis[j]);
        let mut r = normal_form(field, order, &s, &basis);
        if r.is_empty() {
            continue;
        }
        make_monic(field, &mut r);
        let idx = basis.len();
        basis.push(r);
        pairs.extend((0..idx).map(|k| (k, idx)));
    }
    Ok(reduce_basis(field, order, basis))
}

/// Minimize and inter-reduce a Gröbner basis.
pub fn reduce_basis(field: &Field, order: MonomialOrder, basis: Vec<RawPoly>) -> Vec<RawPoly> {
    let mut basis: Vec<RawPoly> = basis.into_iter().filter(|g| !g.is_empty()).collect();
    basis.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut minimal: Vec<RawPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| divides(&h[0].0, &g[0].0)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<RawPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let head = minimal[i][0].clone();
        let tail: RawPoly = minimal[i][1..].to_vec();
        let mut g = vec![head];
        g.extend(normal_form(field, order, &tail, &others));
        make_monic(field, &mut g);
        out.push(g);
    }
    out
}

/// Whether the ideal generated by a Gröbner basis is the whole ring.
pub fn is_unit_ideal(basis: &[RawPoly]) -> bool {
    basis
        .iter()
        .any(|g| g.len() == 1 && g[0].0.iter().all(|&e| e == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: &Field, terms: &[(&[u32], i64)]) -> RawPoly {
        normalize(
            field,
            MonomialOrder::GrevLex,
            terms
                .iter()
                .map(|(m, c)| (m.to_vec(), field.from_int(*c)))
                .collect(),
        )
    }

    #[test]
    fn grevlex_order() {
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&[1, 0], &[0, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 2], &[1, 0]), Ordering::Greater);
        // x*z vs y^2 in k[x,y,z]: grevlex puts y^2 first.
        assert_eq!(o.cmp(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
    }

    #[test]
    fn already_reduced_basis() {
        let f = Field::prime(2).unwrap();
        let input = vec![poly(&f, &[(&[2, 0], 1)]), poly(&f, &[(&[1, 1], 1)])];
        let gb = groebner_basis(&f, MonomialOrder::GrevLex, &input, 1000).unwrap();
        assert_eq!(gb.len(), 2);
    }

    #[test]
    fn one_reduction_step() {
        let f = Field::prime(3).unwrap();
        let input = vec![
            poly(&f, &[(&[1, 0], 1), (&[0, 1], 1)]),
            poly(&f, &[(&[1, 0], 1)]),
        ];
        let gb = groebner_basis(&f, MonomialOrder::GrevLex, &input, 1000).unwrap();
        assert_eq!(
            gb,
            vec![poly(&f, &[(&[0, 1], 1)]), poly(&f, &[(&[1, 0], 1)])]
        );
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::prime(5).unwrap();
        let input = vec![
            poly(&f, &[(&[2, 0, 0], 1), (&[0, 1, 1], 2)]),
            poly(&f, &[(&[1, 1, 0], 1), (&[0, 0, 2], 3)]),
        ];
        assert!(matches!(
            groebner_basis(&f, MonomialOrder::GrevLex, &input, 0),
            Err(Error::Budget(_))
        ));
    }
}
