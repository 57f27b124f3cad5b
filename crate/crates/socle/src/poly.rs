//! Multivariate polynomials with exact coefficients.
//!
//! A polynomial carries a shared handle to its ring (variable names, field,
//! term order) and keeps its terms strictly sorted in decreasing order, so
//! the leading term is always `terms[0]`. Mixing operands from different
//! rings is an error, not undefined behavior.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::monomial::{Monomial, MonomialOrder};

/// The ambient polynomial ring: named variables over a field with a term
/// order. Equality is structural so independently built handles to the same
/// ring interoperate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
    field: FieldSpec,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, field: FieldSpec, order: MonomialOrder) -> Result<Arc<Self>> {
        field.validate()?;
        if vars.is_empty() {
            return Err(Error::InvalidArgument("ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidArgument("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable name {v}")));
            }
        }
        if let MonomialOrder::Block { split } = order {
            if split == 0 || split >= vars.len() {
                return Err(Error::InvalidArgument(format!(
                    "block split {split} outside 1..{}",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(PolyRing { vars, field, order }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same ring with a different term order.
    pub fn with_order(self: &Arc<Self>, order: MonomialOrder) -> Result<Arc<Self>> {
        if self.order == order {
            return Ok(self.clone());
        }
        PolyRing::new(self.vars.clone(), self.field.clone(), order)
    }

    /// Extends by one auxiliary variable (appended last) under a block order
    /// that eliminates it. The name is chosen fresh against existing ones.
    pub fn extend_for_elimination(self: &Arc<Self>) -> Result<Arc<Self>> {
        let mut name = "t".to_string();
        let mut k = 0usize;
        while self.vars.contains(&name) {
            name = format!("t{k}");
            k += 1;
        }
        let mut vars = self.vars.clone();
        vars.push(name);
        PolyRing::new(vars, self.field.clone(), MonomialOrder::Block { split: self.nvars() })
    }

    /// All monomials of exact total degree `d`, in decreasing term order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        fn rec(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, pos: usize, left: u32) {
            if pos + 1 == exps.len() {
                exps[pos] = left;
                out.push(Monomial::from_exps(exps.clone()));
                return;
            }
            for e in (0..=left).rev() {
                exps[pos] = e;
                rec(out, exps, pos + 1, left - e);
            }
            exps[pos] = 0;
        }
        rec(&mut out, &mut exps, 0, d);
        out.sort_by(|a, b| self.order.compare(b, a));
        out
    }
}

pub type Term = (Scalar, Monomial);

#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(c, Monomial::one(ring.nvars()))] }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn variable(ring: &Arc<PolyRing>, index: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(ring.field().one(), Monomial::variable(ring.nvars(), index, 1))],
        }
    }

    pub fn from_monomial(ring: &Arc<PolyRing>, m: Monomial) -> Self {
        Polynomial { ring: ring.clone(), terms: vec![(ring.field().one(), m)] }
    }

    /// Normalizes an arbitrary term list: combines equal monomials, drops
    /// zero coefficients, sorts strictly decreasing.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Result<Self> {
        let field = ring.field().clone();
        let mut map: HashMap<Monomial, Scalar> = HashMap::new();
        for (c, m) in terms {
            if m.nvars() != ring.nvars() {
                return Err(Error::RingMismatch);
            }
            match map.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = field.add(e.get(), &c)?;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        e.insert(s);
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<Term> = map.into_iter().map(|(m, c)| (c, m)).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.1, &a.1));
        Ok(Polynomial { ring: ring.clone(), terms })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn is_term(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.0)
    }

    /// Maximum total degree over the terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.1.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(first) => {
                let d = first.1.degree();
                self.terms.iter().all(|t| t.1.degree() == d)
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match order.compare(&self.terms[i].1, &other.terms[j].1) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = field.add(&self.terms[i].0, &other.terms[j].0)?;
                    if !c.is_zero() {
                        out.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial { ring: self.ring.clone(), terms: out })
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ring.field();
        let terms = self.terms.iter().map(|(c, m)| (field.neg(c), m.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let field = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (a, m) in &self.terms {
            terms.push((field.mul(a, c)?, m.clone()));
        }
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Result<Polynomial> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let field = self.ring.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (a, ma) in &self.terms {
            terms.push((field.mul(a, c)?, ma.mul(m)));
        }
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = self.ring.field();
        let mut map: HashMap<Monomial, Scalar> = HashMap::new();
        for (a, ma) in &self.terms {
            for (b, mb) in &other.terms {
                let m = ma.mul(mb);
                let prod = field.mul(a, b)?;
                match map.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = field.add(e.get(), &prod)?;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            e.insert(s);
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        if !prod.is_zero() {
                            e.insert(prod);
                        }
                    }
                }
            }
        }
        let mut terms: Vec<Term> = map.into_iter().map(|(m, c)| (c, m)).collect();
        let order = self.ring.order();
        terms.sort_by(|a, b| order.compare(&b.1, &a.1));
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn pow(&self, k: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Divides by the leading coefficient.
    pub fn make_monic(&self) -> Result<Polynomial> {
        match self.leading_coefficient() {
            None => Ok(self.clone()),
            Some(lc) => {
                if lc.is_one() {
                    Ok(self.clone())
                } else {
                    self.mul_scalar(&self.ring.field().inv(lc)?)
                }
            }
        }
    }

    /// Canonical generator scaling: over the rationals, clears denominators
    /// and divides by the integer content with a positive leading
    /// coefficient; over a prime field, makes the polynomial monic. This
    /// keeps Buchberger's coefficient growth in check and makes generator
    /// lists reproducible.
    pub fn normalize_scale(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        match self.ring.field() {
            FieldSpec::PrimeField { .. } => self.make_monic(),
            FieldSpec::Rationals => {
                let mut den_lcm = BigInt::one();
                for (c, _) in &self.terms {
                    if let Scalar::Rational(r) = c {
                        den_lcm = den_lcm.lcm(r.denom());
                    }
                }
                let mut nums: Vec<BigInt> = Vec::with_capacity(self.terms.len());
                for (c, _) in &self.terms {
                    if let Scalar::Rational(r) = c {
                        nums.push(r.numer() * (&den_lcm / r.denom()));
                    }
                }
                let mut content = BigInt::zero();
                for n in &nums {
                    content = content.gcd(n);
                }
                if nums[0].is_negative() {
                    content = -content;
                }
                let terms = nums
                    .into_iter()
                    .zip(self.terms.iter())
                    .map(|(n, (_, m))| {
                        (Scalar::Rational(BigRational::from(n / &content)), m.clone())
                    })
                    .collect();
                Ok(Polynomial { ring: self.ring.clone(), terms })
            }
        }
    }

    /// Exact polynomial division; `None` when `self` is not a multiple of
    /// `divisor`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(Error::InvalidArgument("division by zero polynomial".into()));
        }
        let field = self.ring.field();
        let dlm = divisor.leading_monomial().unwrap();
        let dlc = divisor.leading_coefficient().unwrap();
        let mut rem = self.clone();
        let mut q: Vec<Term> = Vec::new();
        while let Some(lm) = rem.leading_monomial().cloned() {
            let Some(m) = lm.try_div(dlm) else { return Ok(None) };
            let c = field.div(rem.leading_coefficient().unwrap(), dlc)?;
            rem = rem.sub(&divisor.mul_term(&c, &m)?)?;
            q.push((c, m));
        }
        Ok(Some(Polynomial::from_terms(&self.ring, q)?))
    }

    /// Moves the polynomial into the elimination extension of its ring.
    pub fn extend_into(&self, ext: &Arc<PolyRing>) -> Result<Polynomial> {
        if ext.nvars() != self.ring.nvars() + 1 {
            return Err(Error::RingMismatch);
        }
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| (c.clone(), m.extend_one()))
            .collect();
        Polynomial::from_terms(ext, terms)
    }

    /// Moves a polynomial free of the auxiliary variable back into the base
    /// ring; errors when the auxiliary variable actually occurs.
    pub fn restrict_into(&self, base: &Arc<PolyRing>) -> Result<Polynomial> {
        if base.nvars() + 1 != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        let aux = self.ring.nvars() - 1;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            if m.exp(aux) != 0 {
                return Err(Error::InvalidArgument(
                    "polynomial still involves the elimination variable".into(),
                ));
            }
            terms.push((c.clone(), m.truncate_one()));
        }
        Polynomial::from_terms(base, terms)
    }

    /// Re-sorts the terms for a ring carrying a different order.
    pub fn reorder_into(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if target.vars() != self.ring.vars() || target.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        Polynomial::from_terms(target, self.terms.clone())
    }

    /// Canonical text form; stable across runs, reparseable by the parser.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let vars = self.ring.vars();
        let mut out = String::new();
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let coeff = c.render();
            let (sign, mag) = match coeff.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", coeff),
            };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.is_one() {
                factors.push(mag);
            }
            for (vi, v) in vars.iter().enumerate() {
                match m.exp(vi) {
                    0 => {}
                    1 => factors.push(v.clone()),
                    e => factors.push(format!("{v}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
