use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::poly::{IPoly, Monomial, Poly};
use crate::consts::{GROEBNER_PAIR_BUDGET, GROEBNER_TERM_BUDGET};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// S-pairs that may be reduced.
    pub pairs: usize,
    /// Terms any intermediate polynomial may hold.
    pub terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            pairs: GROEBNER_PAIR_BUDGET,
            terms: GROEBNER_TERM_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct BuchbergerStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub coprime_skips: usize,
    pub chain_skips: usize,
    pub max_terms: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroebnerBasis {
    /// Reduced basis, monic, sorted by increasing leading monomial.
    pub polys: Vec<Poly>,
    pub stats: BuchbergerStats,
}

impl GroebnerBasis {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

struct State {
    polys: Vec<IPoly>,
    active: Vec<usize>,
    /// `(lcm, i, j)`; the set order gives the normal selection strategy.
    pairs: BTreeSet<(Monomial, usize, usize)>,
    stats: BuchbergerStats,
}

impl State {
    fn lm(&self, i: usize) -> Monomial {
        self.polys[i].lm()
    }

    /// Gebauer-Möller installation of a new polynomial.
    fn update(&mut self, h: usize) {
        let lh = self.lm(h);
        let mut c: Vec<(Monomial, usize)> = self
            .active
            .iter()
            .map(|&g| (lh.lcm(self.lm(g)), g))
            .collect();
        let mut d: Vec<(Monomial, usize)> = vec![];
        while let Some((l1, g1)) = (!c.is_empty()).then(|| c.remove(0)) {
            let coprime = lh.coprime(self.lm(g1));
            let dominated = c.iter().chain(d.iter()).any(|(l2, _)| l2.divides(l1));
            if coprime || !dominated {
                d.push((l1, g1));
            } else {
                self.stats.chain_skips += 1;
            }
        }
        let mut e = vec![];
        for (l, g) in d {
            if lh.coprime(self.lm(g)) {
                self.stats.coprime_skips += 1;
            } else {
                e.push((l, g.min(h), g.max(h)));
            }
        }
        let old: Vec<_> = self.pairs.iter().copied().collect();
        for (l, i, j) in old {
            if lh.divides(l) && lh.lcm(self.lm(i)) != l && lh.lcm(self.lm(j)) != l {
                self.pairs.remove(&(l, i, j));
                self.stats.chain_skips += 1;
            }
        }
        self.pairs.extend(e);
        let polys = &self.polys;
        self.active.retain(|&g| !lh.divides(polys[g].lm()));
        self.active.push(h);
    }
}

/// Buchberger's algorithm under grlex with the normal pair strategy and both
/// criteria. The result is reduced and monic.
pub fn buchberger(gens: &[Poly], budget: &Budget) -> Result<GroebnerBasis> {
    let mut st = State {
        polys: vec![],
        active: vec![],
        pairs: BTreeSet::new(),
        stats: BuchbergerStats::default(),
    };
    let mut seeds: Vec<IPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(IPoly::from_poly)
        .collect();
    seeds.sort_by_key(|p| p.lm());
    for p in seeds {
        let reduced = {
            let basis: Vec<&IPoly> = st.active.iter().map(|&i| &st.polys[i]).collect();
            p.reduce(&basis, budget.terms).ok_or(Error::ResourceLimit {
                what: "terms",
                limit: budget.terms,
            })?
        };
        if reduced.is_zero() {
            continue;
        }
        st.polys.push(reduced);
        st.update(st.polys.len() - 1);
    }
    while let Some(pair) = st.pairs.pop_first() {
        if st.stats.pairs_reduced >= budget.pairs {
            return Err(Error::ResourceLimit {
                what: "pairs",
                limit: budget.pairs,
            });
        }
        st.stats.pairs_reduced += 1;
        let (_, i, j) = pair;
        let s = IPoly::s_poly(&st.polys[i], &st.polys[j]);
        let r = {
            let basis: Vec<&IPoly> = st.active.iter().map(|&k| &st.polys[k]).collect();
            s.reduce(&basis, budget.terms).ok_or(Error::ResourceLimit {
                what: "terms",
                limit: budget.terms,
            })?
        };
        if r.is_zero() {
            st.stats.zero_reductions += 1;
            continue;
        }
        st.stats.max_terms = st.stats.max_terms.max(r.terms.len());
        st.polys.push(r);
        st.update(st.polys.len() - 1);
    }
    let mut minimal: Vec<IPoly> = st.active.iter().map(|&i| st.polys[i].clone()).collect();
    minimal.sort_by_key(|p| p.lm());
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&IPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p)
            .collect();
        let r = minimal[k]
            .clone()
            .reduce(&others, budget.terms)
            .ok_or(Error::ResourceLimit {
                what: "terms",
                limit: budget.terms,
            })?;
        reduced.push(r.to_monic());
    }
    Ok(GroebnerBasis {
        polys: reduced,
        stats: st.stats,
    })
}

/// Multivariate division: `q = Σ quotients[i]·basis[i] + remainder`,
/// with no remainder term divisible by any leading monomial.
#[derive(Debug, Clone)]
pub struct Division {
    pub quotients: Vec<Poly>,
    pub remainder: Poly,
}

pub fn divide(q: &Poly, basis: &[Poly]) -> Division {
    let mut quotients = vec![Poly::zero(); basis.len()];
    let mut rem_terms = vec![];
    let mut p = q.clone();
    while let Some((m, c)) = p.leading().cloned() {
        match basis
            .iter()
            .position(|g| g.leading().is_some_and(|(lm, _)| lm.divides(m)))
        {
            Some(k) => {
                let (lm, lc) = basis[k].leading().cloned().expect("nonzero divisor");
                let u = lm.quotient_of(m);
                let s = &c / &lc;
                quotients[k] = quotients[k].add(&Poly::monomial(u, s.clone()));
                p = p.sub(&basis[k].mul_term(u, &s));
            }
            None => {
                rem_terms.push((m, c.clone()));
                p = p.sub(&Poly::monomial(m, c));
            }
        }
    }
    Division {
        quotients,
        remainder: Poly::from_terms(rem_terms),
    }
}

pub fn normal_form(q: &Poly, basis: &GroebnerBasis) -> Poly {
    divide(q, &basis.polys).remainder
}

/// Exact check that `q − remainder = Σ quotients·basis`.
pub fn division_identity_holds(q: &Poly, basis: &[Poly], d: &Division) -> bool {
    let mut acc = d.remainder.clone();
    for (qi, g) in d.quotients.iter().zip(basis) {
        acc = acc.add(&qi.mul(g));
    }
    acc == *q
}

pub fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let ((mf, cf), (mg, cg)) = (f.leading().expect("nonzero"), g.leading().expect("nonzero"));
    let l = mf.lcm(*mg);
    let one = BigRational::from_integer(1.into());
    f.mul_term(mf.quotient_of(l), &(&one / cf))
        .sub(&g.mul_term(mg.quotient_of(l), &(&one / cg)))
}

/// Post-hoc certificate: indices of S-pairs whose remainder is nonzero.
pub fn s_pair_failures(basis: &[Poly]) -> Vec<(usize, usize)> {
    let mut bad = vec![];
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let r = divide(&s_polynomial(&basis[i], &basis[j]), basis).remainder;
            if !r.is_zero() {
                bad.push((i, j));
            }
        }
    }
    bad
}

pub fn is_groebner(basis: &[Poly]) -> bool {
    s_pair_failures(basis).is_empty()
}

/// Nonzero, monic, and no term of any element divisible by another element's leading monomial.
pub fn is_reduced(basis: &[Poly]) -> bool {
    basis.iter().enumerate().all(|(i, p)| {
        let Some((_, lc)) = p.leading() else {
            return false;
        };
        let one = BigRational::from_integer(1.into());
        *lc == one
            && p.terms().iter().all(|(m, c)| {
                !c.is_zero()
                    && basis
                        .iter()
                        .enumerate()
                        .all(|(j, g)| j == i || !g.leading().is_some_and(|(lm, _)| lm.divides(*m)))
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::poly::J;

    fn p(s: &str) -> Poly {
        Poly::parse(s).unwrap()
    }

    #[test]
    fn single_generator() {
        let gb = buchberger(&[Poly::var(J)], &Budget::default()).unwrap();
        assert_eq!(gb.polys, vec![Poly::var(J)]);
    }

    #[test]
    fn small_ideal_is_closed() {
        let gb = buchberger(&[p("J*a - 1"), p("J^2 - 1")], &Budget::default()).unwrap();
        assert!(is_groebner(&gb.polys));
        assert!(is_reduced(&gb.polys));
        // J - a ∈ I since a(J² − 1) − J(Ja − 1) = J − a
        assert!(normal_form(&p("J - a"), &gb).is_zero());
        assert!(!normal_form(&p("J"), &gb).is_zero());
    }

    #[test]
    fn unit_ideal() {
        let gb = buchberger(&[p("J"), p("J + 1")], &Budget::default()).unwrap();
        assert_eq!(gb.polys, vec![Poly::int(1)]);
    }

    #[test]
    fn pair_budget_reports() {
        let err = buchberger(
            &[p("J^2*a - b"), p("J*a^2 - 1")],
            &Budget {
                pairs: 0,
                terms: 1000,
            },
        );
        assert!(matches!(
            err,
            Err(Error::ResourceLimit { what: "pairs", .. })
        ));
    }

    #[test]
    fn division_reconstructs() {
        let basis = vec![p("J*a - 1"), p("a^2 - b")];
        let q = p("J^2*a^3 + b*a + 5");
        let d = divide(&q, &basis);
        assert!(division_identity_holds(&q, &basis, &d));
    }
}
