//! Monomials with dense exponent vectors and the three supported term
//! orders (degrevlex, lex, block elimination).

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// A monomial in a fixed number of variables. The total degree is cached
/// because every comparison under a degree-first order consults it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn variable(nvars: usize, index: usize, power: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = power;
        Monomial { exps, degree: power }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            let exps = self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect();
            Some(Monomial { exps, degree: self.degree - other.degree })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.min(b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn coprime_with(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    /// Appends one fresh variable with exponent zero (used when moving into
    /// an elimination ring).
    pub fn extend_one(&self) -> Monomial {
        let mut exps = self.exps.clone();
        exps.push(0);
        Monomial { exps, degree: self.degree }
    }

    /// Drops the final variable; caller guarantees its exponent is zero.
    pub fn truncate_one(&self) -> Monomial {
        debug_assert_eq!(*self.exps.last().unwrap(), 0);
        let mut exps = self.exps.clone();
        exps.pop();
        Monomial { exps, degree: self.degree }
    }
}

/// Term orders. `Block { split }` compares the variables from `split`
/// onward first (degrevlex within the block), which makes it an elimination
/// order for those trailing variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "order", rename_all = "snake_case")]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    Block { split: usize },
}

fn degrevlex_slice(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // the monomial with the smaller exponent in the last differing
            // position is the larger one
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::DegRevLex => degrevlex_slice(a.exps(), b.exps()),
            MonomialOrder::Lex => {
                for i in 0..a.nvars() {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { split } => {
                let s = *split;
                match degrevlex_slice(&a.exps()[s..], &b.exps()[s..]) {
                    Ordering::Equal => degrevlex_slice(&a.exps()[..s], &b.exps()[..s]),
                    other => other,
                }
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "degrevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Block { split } => format!("block_elimination@{split}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn degrevlex_orders_two_variable_monomials() {
        let ord = MonomialOrder::DegRevLex;
        // x^2 > xy > y^2 > x > y > 1 with x before y
        let chain = [m(&[2, 0]), m(&[1, 1]), m(&[0, 2]), m(&[1, 0]), m(&[0, 1]), m(&[0, 0])];
        for w in chain.windows(2) {
            assert_eq!(ord.compare(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn degrevlex_prefers_less_of_the_last_variable() {
        let ord = MonomialOrder::DegRevLex;
        // y^2 > xz in k[x,y,z]
        assert_eq!(ord.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_ignores_total_degree() {
        let ord = MonomialOrder::Lex;
        // x > y^5 under lex
        assert_eq!(ord.compare(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_trailing_variable() {
        let ord = MonomialOrder::Block { split: 2 };
        // any monomial containing t = last variable beats any t-free one
        assert_eq!(ord.compare(&m(&[0, 0, 1]), &m(&[7, 7, 0])), Ordering::Greater);
        // within t-free monomials the base degrevlex applies
        assert_eq!(ord.compare(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn lcm_gcd_divide() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert_eq!(a.gcd(&b), m(&[1, 1]));
        assert!(a.gcd(&b).divides(&a));
        assert_eq!(a.lcm(&b).try_div(&a), Some(m(&[0, 2])));
        assert_eq!(a.try_div(&b), None);
    }
}
