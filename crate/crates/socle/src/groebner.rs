//! Buchberger's algorithm and normal forms.
//!
//! Pairs are selected by sugar degree (ties broken by lcm degree, then
//! position), and both classical skip criteria are applied: coprime leading
//! monomials, and the chain criterion against pairs no longer queued.
//! Output bases are reduced (monic, auto-reduced, sorted by increasing
//! leading monomial), hence unique per (ideal, order), which downstream
//! equality tests rely on. Arithmetic is exact; there are no modular or
//! floating-point shortcuts.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial, Term};

/// A reduced Groebner basis, tagged with the order it was computed under.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn contains_one(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().filter_map(|p| p.leading_monomial().cloned()).collect()
    }
}

/// Full reduction of `f` by `gens`: no term of the result is divisible by
/// any leading monomial of `gens`. Reducers are tried in list order, so the
/// result is deterministic for a fixed list.
pub fn normal_form(f: &Polynomial, gens: &[Polynomial]) -> Result<Polynomial> {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let mut p = f.clone();
    let mut remainder: Vec<Term> = Vec::new();
    'outer: while !p.is_zero() {
        let c = p.leading_coefficient().unwrap().clone();
        let m = p.leading_monomial().unwrap().clone();
        for g in gens {
            let Some(glm) = g.leading_monomial() else { continue };
            if let Some(q) = m.try_div(glm) {
                let factor = field.div(&c, g.leading_coefficient().unwrap())?;
                p = p.sub(&g.mul_term(&factor, &q)?)?;
                continue 'outer;
            }
        }
        remainder.push((c.clone(), m.clone()));
        p = p.sub(&Polynomial::from_terms(&ring, vec![(c, m)])?)?;
    }
    Polynomial::from_terms(&ring, remainder)
}

/// The S-polynomial of `f` and `g` (both nonzero).
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let field = f.ring().field().clone();
    let fl = f.leading_monomial().unwrap();
    let gl = g.leading_monomial().unwrap();
    let lcm = fl.lcm(gl);
    let a = f.mul_term(
        &field.inv(f.leading_coefficient().unwrap())?,
        &lcm.try_div(fl).unwrap(),
    )?;
    let b = g.mul_term(
        &field.inv(g.leading_coefficient().unwrap())?,
        &lcm.try_div(gl).unwrap(),
    )?;
    a.sub(&b)
}

fn pair_key(
    sugar: &[u32],
    basis: &[Polynomial],
    i: usize,
    j: usize,
) -> (u32, u32, usize, usize) {
    let li = basis[i].leading_monomial().unwrap();
    let lj = basis[j].leading_monomial().unwrap();
    let lcm = li.lcm(lj);
    let s = lcm.degree()
        + (sugar[i] - li.degree()).max(sugar[j] - lj.degree());
    (s, lcm.degree(), i, j)
}

/// Computes the reduced Groebner basis of the ideal generated by `gens`
/// under the ring's own order. Returns an empty basis for the zero ideal.
pub fn reduced_basis(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let order = ring.order();
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !Arc::ptr_eq(g.ring(), ring) && **g.ring() != **ring {
            return Err(Error::RingMismatch);
        }
        if !g.is_zero() {
            let n = g.normalize_scale()?;
            if !basis.contains(&n) {
                basis.push(n);
            }
        }
    }
    if basis.is_empty() {
        return Ok(GroebnerBasis { order, polys: Vec::new() });
    }
    if basis.iter().all(|p| p.is_term()) {
        return Ok(GroebnerBasis { order, polys: minimal_monomial_basis(ring, &basis) });
    }

    let mut sugar: Vec<u32> = basis.iter().map(|p| p.total_degree().unwrap()).collect();
    let mut pairs: BTreeSet<(u32, u32, usize, usize)> = BTreeSet::new();
    for j in 1..basis.len() {
        for i in 0..j {
            pairs.insert(pair_key(&sugar, &basis, i, j));
        }
    }

    while let Some(&key) = pairs.iter().next() {
        pairs.remove(&key);
        let (pair_sugar, _, i, j) = key;
        let li = basis[i].leading_monomial().unwrap().clone();
        let lj = basis[j].leading_monomial().unwrap().clone();
        if li.coprime_with(&lj) {
            continue;
        }
        let lcm = li.lcm(&lj);
        let chain_hit = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&lcm)
                && !pairs.contains(&pair_key(&sugar, &basis, i.min(k), i.max(k)))
                && !pairs.contains(&pair_key(&sugar, &basis, j.min(k), j.max(k)))
        });
        if chain_hit {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j])?;
        let r = normal_form(&s, &basis)?;
        if r.is_zero() {
            continue;
        }
        let r = r.normalize_scale()?;
        let t = basis.len();
        basis.push(r);
        sugar.push(pair_sugar.max(basis[t].total_degree().unwrap()));
        for i2 in 0..t {
            pairs.insert(pair_key(&sugar, &basis, i2, t));
        }
    }

    Ok(GroebnerBasis { order, polys: autoreduce(&basis)? })
}

/// Minimal generators of a monomial ideal, monic and sorted. For monomial
/// input every S-polynomial vanishes identically, so this equals the
/// reduced basis Buchberger would produce.
fn minimal_monomial_basis(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Vec<Polynomial> {
    let order = ring.order();
    let mut monos: Vec<Monomial> =
        gens.iter().map(|p| p.leading_monomial().unwrap().clone()).collect();
    monos.sort_by(|a, b| order.compare(a, b));
    monos.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    for m in monos {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept.into_iter().map(|m| Polynomial::from_monomial(ring, m)).collect()
}

/// Minimalizes and tail-reduces a Groebner basis; output is monic and
/// sorted by increasing leading monomial.
fn autoreduce(basis: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let Some(first) = basis.first() else { return Ok(Vec::new()) };
    let ring = first.ring().clone();
    let order = ring.order();
    let mut sorted: Vec<Polynomial> = basis.iter().filter(|p| !p.is_zero()).cloned().collect();
    sorted.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in sorted {
        let lm = p.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|q| q.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(p);
        }
    }
    let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let r = normal_form(&minimal[i], &others)?;
        reduced.push(r.make_monic()?);
    }
    reduced.sort_by(|a, b| order.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(reduced)
}
