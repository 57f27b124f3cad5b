//! Monomial primary and irreducible decompositions, dimension filtrations,
//! unmixed components, and distinguished systems of parameters.
//!
//! The dimension filtration D_0 = (0) ⊆ D_1 ⊆ … ⊆ D_ℓ = R collects, at
//! each level, the largest submodule of dimension at most d_i. It is
//! assembled from a primary decomposition of the defining ideal by
//! intersecting the components of large dimension. Non-monomial defining
//! ideals require a caller-supplied decomposition, which is verified by an
//! exact intersection check before use.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{random_form, RIdeal, RingPresentation, SubquotientModule};

/// One component of a primary decomposition with its attached prime (known
/// for computed monomial decompositions, absent for supplied ones).
#[derive(Clone, Debug)]
pub struct FiltComponent {
    pub primary: Ideal,
    pub prime: Option<Ideal>,
    pub dimension: usize,
}

/// The dimension filtration of R, with the decomposition that produced it.
#[derive(Debug)]
pub struct DimensionFiltration {
    pub ideals: Vec<RIdeal>,
    pub dims: Vec<usize>,
    pub lambda: Vec<usize>,
    pub components: Vec<FiltComponent>,
}

impl DimensionFiltration {
    /// Number of strictly increasing dimension steps ℓ.
    pub fn steps(&self) -> usize {
        self.dims.len()
    }
}

/// A candidate or verified system of parameters.
#[derive(Clone, Debug)]
pub struct ParameterSystem {
    ring: Arc<RingPresentation>,
    pub elements: Vec<Polynomial>,
    pub degrees: Vec<u32>,
    pub distinguished: bool,
    pub min_power: u32,
}

impl ParameterSystem {
    /// Wraps explicit forms, checking that they cut the ring down to
    /// dimension zero and testing the distinguished condition.
    pub fn from_elements(
        ring: &Arc<RingPresentation>,
        elements: Vec<Polynomial>,
    ) -> Result<ParameterSystem> {
        if elements.len() != ring.dimension() {
            return Err(Error::InvalidArgument(format!(
                "a system of parameters here needs exactly {} elements, got {}",
                ring.dimension(),
                elements.len()
            )));
        }
        for e in &elements {
            if e.is_zero() || !e.is_homogeneous() || e.total_degree() == Some(0) {
                return Err(Error::InvalidArgument(
                    "parameter elements must be nonzero homogeneous forms of positive degree"
                        .into(),
                ));
            }
        }
        let q = RIdeal::new(ring, elements.clone())?;
        if !q.is_primary_to_max()? {
            return Err(Error::InvalidArgument(
                "supplied elements do not generate an ideal primary to the maximal ideal".into(),
            ));
        }
        let degrees: Vec<u32> = elements
            .iter()
            .map(|e| e.total_degree().unwrap_or(0))
            .collect();
        let min_power = degrees.iter().copied().min().unwrap_or(u32::MAX);
        let filt = dimension_filtration(ring, None)?;
        let mut ps = ParameterSystem {
            ring: ring.clone(),
            elements,
            degrees,
            distinguished: false,
            min_power,
        };
        ps.distinguished = verify_distinguished(&ps, &filt)?.0;
        Ok(ps)
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn ideal(&self) -> Result<RIdeal> {
        RIdeal::new(&self.ring, self.elements.clone())
    }

    pub fn render(&self) -> String {
        if self.elements.is_empty() {
            "0".to_string()
        } else {
            self.elements
                .iter()
                .map(|e| e.render())
                .collect::<Vec<_>>()
                .join(", ")
        }
    }
}

fn require_monomial(i: &Ideal) -> Result<Vec<Monomial>> {
    if !i.is_monomial() {
        return Err(Error::NotMonomial);
    }
    i.minimal_monomial_generators()
}

fn ideal_from_monomials(i: &Ideal, ms: &[Monomial]) -> Result<Ideal> {
    let ring = i.ring();
    let gens = ms
        .iter()
        .map(|m| Polynomial::from_monomial(ring, m.clone()))
        .collect::<Vec<_>>();
    Ideal::new(ring, gens)
}

/// Variables that occur in some generator of the monomial ideal.
fn occurring_vars(ms: &[Monomial]) -> Vec<usize> {
    let mut seen: Vec<bool> = Vec::new();
    for m in ms {
        if seen.len() < m.nvars() {
            seen.resize(m.nvars(), false);
        }
        for v in m.support() {
            seen[v] = true;
        }
    }
    seen.iter()
        .enumerate()
        .filter_map(|(i, s)| s.then_some(i))
        .collect()
}

/// Variables that appear as a pure power among the generators.
fn pure_power_vars(ms: &[Monomial]) -> Vec<usize> {
    ms.iter()
        .filter(|m| m.support().len() == 1)
        .map(|m| m.support()[0])
        .collect()
}

/// Drops components that contain the intersection of the others; repeats
/// until stable.
fn irredundant(mut comps: Vec<Ideal>) -> Result<Vec<Ideal>> {
    let mut deduped: Vec<Ideal> = Vec::new();
    for c in comps.drain(..) {
        let mut dup = false;
        for kept in &deduped {
            if kept.equals(&c)? {
                dup = true;
                break;
            }
        }
        if !dup {
            deduped.push(c);
        }
    }
    let mut comps = deduped;
    'outer: loop {
        if comps.len() <= 1 {
            return Ok(comps);
        }
        for i in 0..comps.len() {
            let mut rest: Option<Ideal> = None;
            for (j, c) in comps.iter().enumerate() {
                if j != i {
                    rest = Some(match rest {
                        None => c.clone(),
                        Some(r) => r.intersect(c)?,
                    });
                }
            }
            if rest.unwrap().is_subideal_of(&comps[i])? {
                comps.remove(i);
                continue 'outer;
            }
        }
        return Ok(comps);
    }
}

/// Irredundant primary decomposition of a monomial ideal by saturation
/// splitting, components merged per associated prime. Returns pairs of
/// (primary component, associated prime). The zero ideal decomposes as
/// itself.
pub fn monomial_primary_decomposition(i: &Ideal) -> Result<Vec<(Ideal, Ideal)>> {
    if i.is_zero_ideal() {
        return Ok(vec![(Ideal::zero(i.ring()), Ideal::zero(i.ring()))]);
    }
    let gens = require_monomial(i)?;
    if gens.iter().any(|m| m.is_one()) {
        return Err(Error::InvalidArgument(
            "cannot decompose the unit ideal".into(),
        ));
    }
    let mut queue: Vec<Vec<Monomial>> = vec![gens];
    let mut primaries: Vec<Ideal> = Vec::new();
    while let Some(ms) = queue.pop() {
        let occurring = occurring_vars(&ms);
        let pure = pure_power_vars(&ms);
        match occurring.iter().find(|v| !pure.contains(v)) {
            None => primaries.push(ideal_from_monomials(i, &ms)?),
            Some(&x) => {
                let k = ms.iter().map(|m| m.exp(x)).max().unwrap();
                let current = ideal_from_monomials(i, &ms)?;
                let ring = i.ring();
                let xv = Polynomial::variable(ring, x);
                let (sat, _) = current.saturate(&Ideal::principal(&xv)?)?;
                queue.push(sat.minimal_monomial_generators()?);
                let with_power = current.sum(&Ideal::principal(&xv.pow(k)?)?)?;
                queue.push(with_power.minimal_monomial_generators()?);
            }
        }
    }

    let mut merged: Vec<(Ideal, Ideal)> = Vec::new();
    for p in primaries {
        let support = occurring_vars(&p.minimal_monomial_generators()?);
        let prime_gens: Vec<Polynomial> = support
            .iter()
            .map(|&v| Polynomial::variable(i.ring(), v))
            .collect();
        let prime = Ideal::new(i.ring(), prime_gens)?;
        match merged.iter_mut().find(|(_, q)| {
            q.generators() == prime.generators()
        }) {
            Some((existing, _)) => *existing = existing.intersect(&p)?,
            None => merged.push((p, prime)),
        }
    }
    let comps = irredundant(merged.iter().map(|(c, _)| c.clone()).collect())?;
    let mut out = Vec::new();
    for c in comps {
        let support = occurring_vars(&c.minimal_monomial_generators()?);
        let prime_gens: Vec<Polynomial> = support
            .iter()
            .map(|&v| Polynomial::variable(i.ring(), v))
            .collect();
        out.push((c.clone(), Ideal::new(i.ring(), prime_gens)?));
    }
    Ok(out)
}

/// Irredundant irreducible decomposition of a monomial ideal: every
/// component is generated by pure variable powers.
pub fn monomial_irreducible_decomposition(i: &Ideal) -> Result<Vec<Ideal>> {
    let gens = require_monomial(i)?;
    if i.is_zero_ideal() {
        return Ok(vec![Ideal::zero(i.ring())]);
    }
    if gens.iter().any(|m| m.is_one()) {
        return Err(Error::InvalidArgument(
            "cannot decompose the unit ideal".into(),
        ));
    }
    let mut queue: Vec<Vec<Monomial>> = vec![gens];
    let mut components: Vec<Ideal> = Vec::new();
    while let Some(ms) = queue.pop() {
        match ms.iter().find(|m| m.support().len() > 1) {
            None => components.push(ideal_from_monomials(i, &ms)?),
            Some(mixed) => {
                let x = mixed.support()[0];
                let a = mixed.exp(x);
                let mut exps = vec![0u32; mixed.nvars()];
                exps[x] = a;
                let left = Monomial::from_exps(exps);
                let right = mixed.try_div(&left).unwrap();
                let current = ideal_from_monomials(i, &ms)?;
                let ring = i.ring();
                let lp = Polynomial::from_monomial(ring, left);
                let rp = Polynomial::from_monomial(ring, right);
                let with_left = current.sum(&Ideal::principal(&lp)?)?;
                queue.push(with_left.minimal_monomial_generators()?);
                let with_right = current.sum(&Ideal::principal(&rp)?)?;
                queue.push(with_right.minimal_monomial_generators()?);
            }
        }
    }
    irredundant(components)
}

fn component_dimension(c: &Ideal) -> Result<usize> {
    c.dimension()?
        .ok_or_else(|| Error::InvalidArgument("decomposition component is the unit ideal".into()))
}

/// The dimension filtration of R, from the in-ring cache when available.
/// Without a supplied decomposition the defining ideal must be monomial
/// (or zero); a supplied decomposition is verified by intersecting its
/// components and comparing with the defining ideal.
pub fn dimension_filtration(
    ring: &Arc<RingPresentation>,
    supplied: Option<&[Ideal]>,
) -> Result<Arc<DimensionFiltration>> {
    if let Some(cached) = ring.filtration.lock().unwrap().as_ref() {
        return Ok(cached.clone());
    }

    let components: Vec<FiltComponent> = match supplied {
        Some(list) => {
            if list.is_empty() {
                return Err(Error::DecompositionMismatch);
            }
            let mut meet = list[0].clone();
            for c in &list[1..] {
                meet = meet.intersect(c)?;
            }
            if !meet.equals(ring.defining())? {
                return Err(Error::DecompositionMismatch);
            }
            list.iter()
                .map(|c| {
                    Ok(FiltComponent {
                        primary: c.clone(),
                        prime: None,
                        dimension: component_dimension(c)?,
                    })
                })
                .collect::<Result<_>>()?
        }
        None => {
            if !ring.defining().is_monomial() {
                return Err(Error::NotMonomial);
            }
            monomial_primary_decomposition(ring.defining())?
                .into_iter()
                .map(|(primary, prime)| {
                    Ok(FiltComponent {
                        dimension: component_dimension(&primary)?,
                        primary,
                        prime: Some(prime),
                    })
                })
                .collect::<Result<_>>()?
        }
    };

    let mut lambda: Vec<usize> = components.iter().map(|c| c.dimension).collect();
    lambda.sort_unstable();
    lambda.dedup();
    let steps = lambda.len();

    let mut ideals: Vec<RIdeal> = Vec::with_capacity(steps + 1);
    for i in 0..steps {
        let mut meet: Option<Ideal> = None;
        for c in components.iter().filter(|c| c.dimension >= lambda[i]) {
            meet = Some(match meet {
                None => c.primary.clone(),
                Some(m) => m.intersect(&c.primary)?,
            });
        }
        let pre = meet.expect("every threshold keeps at least the top-dimensional component");
        ideals.push(RIdeal::wrap(ring, pre.sum(ring.defining())?));
    }
    ideals.push(RIdeal::unit(ring)?);

    if !ideals[0].is_zero_in_quotient()? {
        return Err(Error::DecompositionMismatch);
    }
    for i in 1..ideals.len() {
        if !ideals[i - 1].is_subideal_of(&ideals[i])? || ideals[i - 1].equals(&ideals[i])? {
            return Err(Error::DecompositionMismatch);
        }
    }
    for i in 1..steps {
        let module = SubquotientModule::new(ideals[i].clone(), RIdeal::zero(ring))?;
        if module.dimension()? != Some(lambda[i - 1]) {
            return Err(Error::DecompositionMismatch);
        }
    }
    if lambda[steps - 1] != ring.dimension() {
        return Err(Error::DecompositionMismatch);
    }

    let filt = Arc::new(DimensionFiltration {
        ideals,
        dims: lambda.clone(),
        lambda,
        components,
    });
    let mut slot = ring.filtration.lock().unwrap();
    if let Some(existing) = slot.as_ref() {
        return Ok(existing.clone());
    }
    *slot = Some(filt.clone());
    Ok(filt)
}

/// a_{ℓ−1} = D_{ℓ−1}: the quotient R/a_{ℓ−1} is the unmixed part of R.
pub fn unmixed_component(ring: &Arc<RingPresentation>) -> Result<RIdeal> {
    let filt = dimension_filtration(ring, None)?;
    Ok(filt.ideals[filt.steps() - 1].clone())
}

fn mix(seed: u64, a: u64, b: u64) -> u64 {
    let mut h = seed ^ 0xA076_1D64_78BD_642F;
    for v in [a, b] {
        h ^= v.wrapping_mul(0xE703_7ED1_A0B4_28DB);
        h = h.rotate_left(23).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    }
    h
}

/// Annihilator of D_i as an ideal of R, on preimages: defining : D_i.
fn annihilator_of(ring: &Arc<RingPresentation>, di: &RIdeal) -> Result<RIdeal> {
    let divisor = Ideal::new(ring.ambient(), di.preimage().generators().to_vec())?;
    let pre = ring.defining().colon(&divisor)?;
    Ok(RIdeal::wrap(ring, pre))
}

/// Draws a distinguished system of parameters of the given element degree:
/// x_j is sampled inside Ann(D_i) for the largest i with d_i < j, so the
/// annihilation conditions hold by construction; the sop property is then
/// verified, retrying with fresh randomness up to max_attempts.
pub fn distinguished_sop(
    ring: &Arc<RingPresentation>,
    degree: u32,
    seed: u64,
    max_attempts: u32,
) -> Result<ParameterSystem> {
    if degree == 0 {
        return Err(Error::InvalidArgument(
            "parameter degree must be at least 1".into(),
        ));
    }
    let filt = dimension_filtration(ring, None)?;
    let d = ring.dimension();
    if d == 0 {
        return Ok(ParameterSystem {
            ring: ring.clone(),
            elements: Vec::new(),
            degrees: Vec::new(),
            distinguished: true,
            min_power: u32::MAX,
        });
    }

    let mut constraints: Vec<Option<RIdeal>> = Vec::with_capacity(d);
    for j in 1..=d {
        let mut level = 0usize;
        for (idx, &di) in filt.dims.iter().enumerate() {
            if di < j {
                level = idx + 1;
            }
        }
        if level == 0 {
            constraints.push(None);
        } else {
            constraints.push(Some(annihilator_of(ring, &filt.ideals[level])?));
        }
    }

    for attempt in 0..max_attempts {
        let mut elements = Vec::with_capacity(d);
        for (j, c) in constraints.iter().enumerate() {
            let s = mix(seed, attempt as u64, j as u64);
            elements.push(random_form(ring, degree, c.as_ref(), s)?);
        }
        let q = RIdeal::new(ring, elements.clone())?;
        if !q.is_primary_to_max()? {
            continue;
        }
        let ps = ParameterSystem {
            ring: ring.clone(),
            degrees: elements
                .iter()
                .map(|e| e.total_degree().unwrap_or(0))
                .collect(),
            elements,
            distinguished: true,
            min_power: degree,
        };
        let (ok, _) = verify_distinguished(&ps, &filt)?;
        if ok {
            return Ok(ps);
        }
    }
    Err(Error::SopConstruction {
        attempts: max_attempts as usize,
        context: format!("degree {degree} draws never produced a distinguished sop"),
    })
}

/// Checks the annihilation conditions x_j · D_i = 0 for all i and all j
/// with d_i < j, returning failures as rendered witnesses.
pub fn verify_distinguished(
    ps: &ParameterSystem,
    filt: &DimensionFiltration,
) -> Result<(bool, Vec<String>)> {
    let ring = ps.ring();
    let d = ring.dimension();
    let mut witnesses = Vec::new();
    for (idx, &di) in filt.dims.iter().enumerate() {
        if idx + 1 == filt.steps() {
            continue;
        }
        let ideal = &filt.ideals[idx + 1];
        for j in (di + 1)..=d {
            let x = &ps.elements[j - 1];
            for g in ideal.preimage().generators() {
                let prod = x.mul(g)?;
                if !ring.defining().contains(&prod)? {
                    witnesses.push(format!(
                        "x_{j} * ({}) is nonzero in the quotient",
                        g.render()
                    ));
                }
            }
        }
    }
    Ok((witnesses.is_empty(), witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;
    use crate::poly::PolyRing;
    use crate::ring::make_ring;

    fn ambient(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            vars.iter().map(|s| s.to_string()).collect(),
            FieldSpec::Rationals,
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    fn quotient(vars: &[&str], defining: &str) -> Arc<RingPresentation> {
        let p = ambient(vars);
        let i = Ideal::from_strings(&p, defining).unwrap();
        make_ring(&p, i).unwrap()
    }

    fn contains_component(comps: &[(Ideal, Ideal)], r: &Arc<PolyRing>, gens: &str) -> bool {
        let target = Ideal::from_strings(r, gens).unwrap();
        comps.iter().any(|(c, _)| c.equals(&target).unwrap())
    }

    #[test]
    fn primary_decomposition_of_line_plane_ideal() {
        let r = ambient(&["x", "y", "z"]);
        let i = Ideal::from_strings(&r, "x*y, x*z").unwrap();
        let comps = monomial_primary_decomposition(&i).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(contains_component(&comps, &r, "x"));
        assert!(contains_component(&comps, &r, "y, z"));
        for (c, p) in &comps {
            assert!(c.equals(p).unwrap());
        }
    }

    #[test]
    fn primary_decomposition_of_two_planes_ideal() {
        let r = ambient(&["x", "y", "z", "w"]);
        let i = Ideal::from_strings(&r, "x*z, x*w, y*z, y*w").unwrap();
        let comps = monomial_primary_decomposition(&i).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(contains_component(&comps, &r, "x, y"));
        assert!(contains_component(&comps, &r, "z, w"));
    }

    #[test]
    fn primary_decomposition_keeps_m_primary_ideals_whole() {
        let r = ambient(&["x", "y"]);
        let i = Ideal::from_strings(&r, "x^2, y^2").unwrap();
        let comps = monomial_primary_decomposition(&i).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].0.equals(&i).unwrap());
        assert!(comps[0].1.equals(&Ideal::from_strings(&r, "x, y").unwrap()).unwrap());
    }

    #[test]
    fn irreducible_decomposition_examples() {
        let r = ambient(&["x", "y"]);
        let m2 = Ideal::from_strings(&r, "x^2, x*y, y^2").unwrap();
        let comps = monomial_irreducible_decomposition(&m2).unwrap();
        assert_eq!(comps.len(), 2);
        let c1 = Ideal::from_strings(&r, "x^2, y").unwrap();
        let c2 = Ideal::from_strings(&r, "x, y^2").unwrap();
        assert!(comps.iter().any(|c| c.equals(&c1).unwrap()));
        assert!(comps.iter().any(|c| c.equals(&c2).unwrap()));

        let q = Ideal::from_strings(&r, "x^2, y^2").unwrap();
        let comps = monomial_irreducible_decomposition(&q).unwrap();
        assert_eq!(comps.len(), 1);
        assert!(comps[0].equals(&q).unwrap());

        let xy = Ideal::from_strings(&r, "x*y").unwrap();
        let comps = monomial_irreducible_decomposition(&xy).unwrap();
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn decomposition_intersection_reproduces_input() {
        let r = ambient(&["x", "y", "z"]);
        for gens in ["x*y, x*z", "x^2*y, y^2*z", "x*y*z"] {
            let i = Ideal::from_strings(&r, gens).unwrap();
            let comps = monomial_irreducible_decomposition(&i).unwrap();
            let mut meet = comps[0].clone();
            for c in &comps[1..] {
                meet = meet.intersect(c).unwrap();
            }
            assert!(meet.equals(&i).unwrap(), "intersection mismatch for {gens}");
        }
    }

    #[test]
    fn non_monomial_input_is_rejected() {
        let r = ambient(&["x", "y"]);
        let i = Ideal::from_strings(&r, "x^2 + y^2").unwrap();
        assert!(matches!(
            monomial_primary_decomposition(&i),
            Err(Error::NotMonomial)
        ));
        assert!(matches!(
            monomial_irreducible_decomposition(&i),
            Err(Error::NotMonomial)
        ));
    }

    #[test]
    fn filtration_of_line_plane_ring() {
        let r = quotient(&["x", "y", "z"], "x*y, x*z");
        let filt = dimension_filtration(&r, None).unwrap();
        assert_eq!(filt.dims, vec![1, 2]);
        assert_eq!(filt.steps(), 2);
        let d1 = RIdeal::from_strings(&r, "x").unwrap();
        assert!(filt.ideals[1].equals(&d1).unwrap());
        assert!(filt.ideals[0].is_zero_in_quotient().unwrap());
        assert!(filt.ideals[2].is_unit_ideal().unwrap());
        let um = unmixed_component(&r).unwrap();
        assert!(um.equals(&d1).unwrap());
    }

    #[test]
    fn filtration_of_unmixed_rings_is_trivial() {
        let two_planes = quotient(&["x", "y", "z", "w"], "x*z, x*w, y*z, y*w");
        let filt = dimension_filtration(&two_planes, None).unwrap();
        assert_eq!(filt.dims, vec![2]);
        assert!(unmixed_component(&two_planes)
            .unwrap()
            .is_zero_in_quotient()
            .unwrap());

        let poly = quotient(&["x", "y"], "");
        let filt = dimension_filtration(&poly, None).unwrap();
        assert_eq!(filt.dims, vec![2]);
        assert_eq!(filt.ideals.len(), 2);
    }

    #[test]
    fn supplied_decompositions_are_verified() {
        let p = ambient(&["x", "y", "z"]);
        let defining = Ideal::from_strings(&p, "x^2 + y^2 + z^2").unwrap();
        let r = make_ring(&p, defining.clone()).unwrap();
        let filt = dimension_filtration(&r, Some(&[defining])).unwrap();
        assert_eq!(filt.dims, vec![2]);

        let p2 = ambient(&["x", "y", "z"]);
        let defining2 = Ideal::from_strings(&p2, "x^2 + y^2 + z^2").unwrap();
        let r2 = make_ring(&p2, defining2).unwrap();
        let wrong = Ideal::from_strings(&p2, "x").unwrap();
        assert!(matches!(
            dimension_filtration(&r2, Some(&[wrong])),
            Err(Error::DecompositionMismatch)
        ));
    }

    #[test]
    fn non_monomial_without_decomposition_is_rejected() {
        let r = quotient(&["x", "y", "z"], "x^2 + y^2 + z^2");
        assert!(matches!(
            dimension_filtration(&r, None),
            Err(Error::NotMonomial)
        ));
    }

    #[test]
    fn distinguished_sop_on_line_plane_ring() {
        let r = quotient(&["x", "y", "z"], "x*y, x*z");
        let filt = dimension_filtration(&r, None).unwrap();
        for degree in [1u32, 2] {
            let ps = distinguished_sop(&r, degree, 11, 50).unwrap();
            assert_eq!(ps.elements.len(), 2);
            assert!(ps.distinguished);
            assert_eq!(ps.min_power, degree);
            let (ok, witnesses) = verify_distinguished(&ps, &filt).unwrap();
            assert!(ok, "witnesses: {witnesses:?}");
            let ann = RIdeal::from_strings(&r, "y, z").unwrap();
            assert!(ann.contains(&ps.elements[1]).unwrap());
        }
    }

    #[test]
    fn hand_built_sops_report_distinguished_status() {
        let r = quotient(&["x", "y", "z"], "x*y, x*z");
        let good = ParameterSystem::from_elements(
            &r,
            vec![
                parse_polynomial(r.ambient(), "x + y").unwrap(),
                parse_polynomial(r.ambient(), "y + z").unwrap(),
            ],
        )
        .unwrap();
        assert!(good.distinguished);
        assert_eq!(good.min_power, 1);

        let bad = ParameterSystem::from_elements(
            &r,
            vec![
                parse_polynomial(r.ambient(), "x + y").unwrap(),
                parse_polynomial(r.ambient(), "x + z").unwrap(),
            ],
        )
        .unwrap();
        assert!(!bad.distinguished);
    }

    #[test]
    fn artinian_rings_get_the_empty_sop() {
        let r = quotient(&["x", "y"], "x^2, x*y, y^2");
        let ps = distinguished_sop(&r, 2, 3, 5).unwrap();
        assert!(ps.elements.is_empty());
        assert!(ps.distinguished);
        assert!(ps.ideal().unwrap().is_primary_to_max().unwrap());
    }

    #[test]
    fn cm_rings_make_every_sop_distinguished() {
        let r = quotient(&["x", "y"], "");
        let ps = distinguished_sop(&r, 2, 19, 20).unwrap();
        assert!(ps.distinguished);
        assert_eq!(ps.elements.len(), 2);
    }
}
