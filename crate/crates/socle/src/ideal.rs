//! Ideals of the ambient polynomial ring and the operations the rest of
//! the toolkit is built from: sums, products, powers, elimination-based
//! intersection and colon, saturation, Krull dimension, graded Hilbert
//! function and Artinian length.
//!
//! Reduced Groebner bases are cached per (ideal handle, order); clones of
//! an ideal share the cache. Intersection always goes through the
//! elimination route, never through combinatorial shortcuts, so that the
//! lcm/quotient formulas for monomial ideals remain available as
//! independent test oracles.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::cache;
use crate::error::{Error, Result};
use crate::groebner::{normal_form, reduced_basis, GroebnerBasis};
use crate::monomial::{Monomial, MonomialOrder};
use crate::parse::parse_generators;
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    homogeneous: bool,
    monomial: bool,
    gb: Arc<Mutex<BTreeMap<MonomialOrder, Arc<GroebnerBasis>>>>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.render())
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut normalized: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !Arc::ptr_eq(g.ring(), ring) && **g.ring() != **ring {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() {
                let n = g.normalize_scale()?;
                if !normalized.contains(&n) {
                    normalized.push(n);
                }
            }
        }
        let homogeneous = normalized.iter().all(|g| g.is_homogeneous());
        let monomial = normalized.iter().all(|g| g.is_term());
        Ok(Ideal {
            ring: ring.clone(),
            gens: normalized,
            homogeneous,
            monomial,
            gb: Arc::new(Mutex::new(BTreeMap::new())),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            homogeneous: true,
            monomial: true,
            gb: Arc::new(Mutex::new(BTreeMap::new())),
        }
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Result<Self> {
        Ideal::new(ring, vec![Polynomial::one(ring)])
    }

    pub fn principal(poly: &Polynomial) -> Result<Self> {
        Ideal::new(poly.ring(), vec![poly.clone()])
    }

    pub fn from_strings(ring: &Arc<PolyRing>, input: &str) -> Result<Self> {
        Ideal::new(ring, parse_generators(ring, input)?)
    }

    /// The ideal generated by all the variables.
    pub fn maximal(ring: &Arc<PolyRing>) -> Result<Self> {
        let gens = (0..ring.nvars()).map(|i| Polynomial::variable(ring, i)).collect();
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial
    }

    pub fn render(&self) -> String {
        self.gens.iter().map(|g| g.render()).collect::<Vec<_>>().join(", ")
    }

    /// Reduced Groebner basis under `order`, consulting the in-memory cache
    /// and, when one is configured, the on-disk cache.
    pub fn groebner(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(hit) = self.gb.lock().unwrap().get(&order) {
            return Ok(hit.clone());
        }
        let oring = self.ring.with_order(order)?;
        let gens: Vec<Polynomial> = self
            .gens
            .iter()
            .map(|g| g.reorder_into(&oring))
            .collect::<Result<_>>()?;
        let key = cache::basis_key(&oring, order, &gens);
        let basis = match cache::lookup(&oring, order, &key) {
            Some(polys) => GroebnerBasis { order, polys },
            None => {
                let computed = reduced_basis(&oring, &gens)?;
                cache::store(&key, &computed.polys);
                computed
            }
        };
        let arc = Arc::new(basis);
        self.gb.lock().unwrap().insert(order, arc.clone());
        Ok(arc)
    }

    pub fn default_groebner(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner(self.ring.order())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        let gb = self.default_groebner()?;
        if gb.polys.is_empty() {
            return Ok(f.is_zero());
        }
        let f = f.reorder_into(gb.polys[0].ring())?;
        Ok(normal_form(&f, &gb.polys)?.is_zero())
    }

    pub fn normal_form_of(&self, f: &Polynomial) -> Result<Polynomial> {
        let gb = self.default_groebner()?;
        if gb.polys.is_empty() {
            return Ok(f.clone());
        }
        let f = f.reorder_into(gb.polys[0].ring())?;
        normal_form(&f, &gb.polys)?.reorder_into(&self.ring)
    }

    pub fn is_subideal_of(&self, other: &Ideal) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality through reduced bases, which are unique per order.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if **self.ring() != **other.ring() {
            return Err(Error::RingMismatch);
        }
        let a = self.default_groebner()?;
        let b = other.default_groebner()?;
        Ok(a.polys == b.polys)
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        Ok(self.default_groebner()?.contains_one())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(g)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// I^k, with generator interreduction between multiplications to curb
    /// generator blowup. I^0 is the unit ideal.
    pub fn power(&self, k: u32) -> Result<Ideal> {
        if k == 0 {
            return Ideal::unit(&self.ring);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
            acc = acc.interreduced()?;
        }
        Ok(acc)
    }

    /// Replaces the generators by an interreduced set generating the same
    /// ideal (no generator's term is divisible by another's leading term).
    pub fn interreduced(&self) -> Result<Ideal> {
        let mut cur = self.gens.clone();
        loop {
            let mut changed = false;
            let mut next: Vec<Polynomial> = Vec::new();
            for i in 0..cur.len() {
                let mut others: Vec<Polynomial> = next.clone();
                others.extend(cur[i + 1..].iter().cloned());
                let r = normal_form(&cur[i], &others)?;
                if r != cur[i] {
                    changed = true;
                }
                if !r.is_zero() {
                    next.push(r.normalize_scale()?);
                }
            }
            let order = self.ring.order();
            next.sort_by(|a, b| {
                order
                    .compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
                    .then_with(|| a.render().cmp(&b.render()))
            });
            cur = next;
            if !changed {
                break;
            }
        }
        Ideal::new(&self.ring, cur)
    }

    /// I intersected with J, by eliminating t from t*I + (1-t)*J in an
    /// extension ring with one auxiliary variable (appended last, hidden
    /// from the caller).
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if **self.ring() != **other.ring() {
            return Err(Error::RingMismatch);
        }
        let ext = self.ring.extend_for_elimination()?;
        let aux = ext.nvars() - 1;
        let t = Polynomial::variable(&ext, aux);
        let one_minus_t = Polynomial::one(&ext).sub(&t)?;
        let mut h: Vec<Polynomial> = Vec::new();
        for f in &self.gens {
            h.push(t.mul(&f.extend_into(&ext)?)?);
        }
        for g in &other.gens {
            h.push(one_minus_t.mul(&g.extend_into(&ext)?)?);
        }
        let gb = reduced_basis(&ext, &h)?;
        let mut gens = Vec::new();
        for p in &gb.polys {
            if p.terms().iter().all(|(_, m)| m.exp(aux) == 0) {
                gens.push(p.restrict_into(&self.ring)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// I : J, as the intersection over generators g of J of (1/g)(I ∩ (g)).
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        if **self.ring() != **other.ring() {
            return Err(Error::RingMismatch);
        }
        if other.is_zero_ideal() {
            return Err(Error::ColonByZero);
        }
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let meet = self.intersect(&Ideal::principal(g)?)?;
            let mut quo = Vec::with_capacity(meet.gens.len());
            for h in meet.gens {
                let d = h.div_exact(g)?.ok_or_else(|| {
                    Error::InvalidArgument(
                        "intersection with principal ideal not divisible by its generator".into(),
                    )
                })?;
                quo.push(d);
            }
            let part = Ideal::new(&self.ring, quo)?;
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersect(&part)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// I : J^infinity together with the stabilization exponent: the least
    /// k >= 0 with I : J^k = I : J^(k+1).
    pub fn saturate(&self, other: &Ideal) -> Result<(Ideal, usize)> {
        let mut prev = self.clone();
        let mut k = 0usize;
        loop {
            let next = prev.colon(other)?;
            if next.equals(&prev)? {
                return Ok((prev, k));
            }
            prev = next;
            k += 1;
        }
    }

    /// Krull dimension of P/I, from the leading-term ideal via maximal
    /// independent variable sets. `None` encodes the unit ideal (dimension
    /// minus infinity by convention).
    pub fn dimension(&self) -> Result<Option<usize>> {
        let gb = self.default_groebner()?;
        if gb.contains_one() {
            return Ok(None);
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = gb
            .leading_monomials()
            .iter()
            .map(|m| m.support().iter().fold(0u64, |acc, &i| acc | (1 << i)))
            .collect();
        let mut best = 0usize;
        for mask in 0u64..(1u64 << n) {
            if supports.iter().all(|s| s & !mask != 0) {
                best = best.max(mask.count_ones() as usize);
            }
        }
        Ok(Some(best))
    }

    /// Counts standard monomials of total degree `e` for the leading-term
    /// ideal: the graded Hilbert function of P/I.
    pub fn hilbert_function(&self, e: u32) -> Result<u64> {
        if !self.homogeneous {
            return Err(Error::NotHomogeneous("ideal"));
        }
        let gb = self.default_groebner()?;
        let lms = gb.leading_monomials();
        Ok(count_standard_monomials(&lms, self.ring.nvars(), e))
    }

    /// Total count of standard monomials; requires a zero-dimensional
    /// quotient.
    pub fn artinian_length(&self) -> Result<u64> {
        if self.dimension()? != Some(0) {
            return Err(Error::NotZeroDimensional);
        }
        let gb = self.default_groebner()?;
        let lms = gb.leading_monomials();
        let n = self.ring.nvars();
        let mut total = 0u64;
        let mut e = 0u32;
        loop {
            let c = count_standard_monomials(&lms, n, e);
            if c == 0 {
                return Ok(total);
            }
            total += c;
            e += 1;
        }
    }

    /// True when I is primary to the irrelevant maximal ideal: proper with
    /// zero-dimensional quotient.
    pub fn is_primary_to_max(&self) -> Result<bool> {
        Ok(self.dimension()? == Some(0))
    }

    /// Minimal monomial generators; requires a monomial ideal. For monomial
    /// ideals the reduced basis is exactly the minimal generator set.
    pub fn minimal_monomial_generators(&self) -> Result<Vec<Monomial>> {
        if !self.monomial {
            return Err(Error::NotMonomial);
        }
        Ok(self.default_groebner()?.leading_monomials())
    }
}

/// Counts exponent vectors of total degree `e` not divisible by any of the
/// given leading monomials.
fn count_standard_monomials(lms: &[Monomial], nvars: usize, e: u32) -> u64 {
    fn rec(lms: &[Monomial], exps: &mut Vec<u32>, pos: usize, left: u32) -> u64 {
        if pos + 1 == exps.len() {
            exps[pos] = left;
            let standard = !lms
                .iter()
                .any(|m| m.exps().iter().zip(exps.iter()).all(|(a, b)| a <= b));
            exps[pos] = 0;
            return standard as u64;
        }
        let mut acc = 0u64;
        for v in 0..=left {
            exps[pos] = v;
            acc += rec(lms, exps, pos + 1, left - v);
        }
        exps[pos] = 0;
        acc
    }
    let mut exps = vec![0u32; nvars];
    rec(lms, &mut exps, 0, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            FieldSpec::Rationals,
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, s: &str) -> Ideal {
        Ideal::from_strings(r, s).unwrap()
    }

    #[test]
    fn intersection_of_monomial_ideals_matches_lcm_oracle() {
        let r = ring(&["x", "y"]);
        let a = ideal(&r, "x^2, y^2");
        let b = ideal(&r, "x*y");
        let meet = a.intersect(&b).unwrap();
        let expected = ideal(&r, "x^2*y, x*y^2");
        assert!(meet.equals(&expected).unwrap());
    }

    #[test]
    fn colon_of_power_ideal_by_maximal_gives_socle_generators() {
        let r = ring(&["x", "y"]);
        let q = ideal(&r, "x^2, y^2");
        let m = Ideal::maximal(&r).unwrap();
        let soc = q.colon(&m).unwrap();
        let expected = ideal(&r, "x^2, x*y, y^2");
        assert!(soc.equals(&expected).unwrap());
    }

    #[test]
    fn colon_by_zero_is_rejected() {
        let r = ring(&["x", "y"]);
        let q = ideal(&r, "x^2, y^2");
        assert!(matches!(q.colon(&Ideal::zero(&r)), Err(Error::ColonByZero)));
    }

    #[test]
    fn saturation_reports_stabilization_exponent() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&r, "x*y, x*z");
        let (sat_x, e_x) = i.saturate(&ideal(&r, "x")).unwrap();
        assert!(sat_x.equals(&ideal(&r, "y, z")).unwrap());
        assert_eq!(e_x, 1);
        let (sat_y, e_y) = i.saturate(&ideal(&r, "y")).unwrap();
        assert!(sat_y.equals(&ideal(&r, "x")).unwrap());
        assert_eq!(e_y, 1);
        let (sat_u, e_u) = i.saturate(&Ideal::unit(&r).unwrap()).unwrap();
        assert!(sat_u.equals(&i).unwrap());
        assert_eq!(e_u, 0);
    }

    #[test]
    fn dimension_by_independent_sets() {
        let r3 = ring(&["x", "y", "z"]);
        assert_eq!(ideal(&r3, "x*y, x*z").dimension().unwrap(), Some(2));
        assert_eq!(Ideal::zero(&r3).dimension().unwrap(), Some(3));
        assert_eq!(ideal(&r3, "x, y, z").dimension().unwrap(), Some(0));
        assert_eq!(Ideal::unit(&r3).unwrap().dimension().unwrap(), None);
        let r2 = ring(&["x", "y"]);
        assert_eq!(ideal(&r2, "x^2 + y^2").dimension().unwrap(), Some(1));
    }

    #[test]
    fn hilbert_function_counts_standard_monomials() {
        let r = ring(&["x", "y"]);
        let q = ideal(&r, "x^2, y^2");
        let values: Vec<u64> =
            (0..5).map(|e| q.hilbert_function(e).unwrap()).collect();
        assert_eq!(values, vec![1, 2, 1, 0, 0]);
        assert_eq!(q.artinian_length().unwrap(), 4);
    }

    #[test]
    fn artinian_length_requires_zero_dimension() {
        let r = ring(&["x", "y"]);
        assert!(matches!(
            ideal(&r, "x^2").artinian_length(),
            Err(Error::NotZeroDimensional)
        ));
    }

    #[test]
    fn power_interreduces_generators() {
        let r = ring(&["x", "y"]);
        let q = ideal(&r, "x^2, y^2");
        let q3 = q.power(3).unwrap();
        let expected = ideal(&r, "x^6, x^4*y^2, x^2*y^4, y^6");
        assert!(q3.equals(&expected).unwrap());
        assert_eq!(q3.generators().len(), 4);
        assert!(q.power(0).unwrap().is_unit_ideal().unwrap());
    }

    #[test]
    fn membership_via_normal_form() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, "x^2 - y^2, x*y");
        let f = crate::parse::parse_polynomial(&r, "x^3").unwrap();
        assert!(i.contains(&f).unwrap());
        let g = crate::parse::parse_polynomial(&r, "x^2").unwrap();
        assert!(!i.contains(&g).unwrap());
    }

    #[test]
    fn colon_undoes_product_for_regular_element() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, "x^2, x*y + y^3");
        let f = crate::parse::parse_polynomial(&r, "x + y").unwrap();
        let prod = i.product(&Ideal::principal(&f).unwrap()).unwrap();
        let back = prod.colon(&Ideal::principal(&f).unwrap()).unwrap();
        assert!(back.equals(&i).unwrap());
    }
}
