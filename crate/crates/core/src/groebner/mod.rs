//! Exact polynomial algebra for the Type I.b non-existence argument.

mod buchberger;
mod poly;

pub use buchberger::{
    buchberger, divide, division_identity_holds, is_groebner, is_reduced, normal_form,
    s_pair_failures, s_polynomial, BuchbergerStats, Budget, Division, GroebnerBasis,
};
pub use poly::{Monomial, Poly, A, ALPHA, B, H, J, NVARS, VAR_NAMES};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};

fn p(s: &str) -> Poly {
    Poly::parse(s).expect("built-in polynomial literal")
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `λ = 6J − 2a − α`.
pub fn lambda() -> Poly {
    p("6*J - 2*a - alpha")
}

/// Images of the variables under `Q ↦ ∇h(Q)/h`.
pub fn derivation_images() -> [Poly; NVARS] {
    let l = lambda();
    let (j, a, b, al, h) = (
        Poly::var(J),
        Poly::var(A),
        Poly::var(B),
        Poly::var(ALPHA),
        Poly::var(H),
    );
    let two_j = j.scale(&q(2, 1));
    let da = b.mul(&b).add(&l.sub(&a).mul(&a.sub(&two_j)));
    let db = b.mul(&l.add(&two_j).sub(&a.scale(&q(2, 1))));
    let dal = l.sub(&al).mul(&al.sub(&two_j));
    let dh = Poly::int(1).sub(&h.mul(&l.sub(&two_j))).scale(&q(2, 1));
    [Poly::zero(), da, db, dal, dh]
}

/// `Q ↦ ∇h(Q)/h` by the chain rule.
pub fn nabla_h(x: &Poly) -> Poly {
    nabla_with(x, &derivation_images())
}

fn nabla_with(x: &Poly, images: &[Poly; NVARS]) -> Poly {
    let mut out = Poly::zero();
    for (i, img) in images.iter().enumerate() {
        if img.is_zero() {
            continue;
        }
        let d = x.partial(i);
        if !d.is_zero() {
            out = out.add(&d.mul(img));
        }
    }
    out
}

pub const PRINTED_P1: &str = "-a*b^2*H - 8*J^2*a*H - 4*J*a*H*alpha + 6*J*a^2*H + 2*J*a + a*H*alpha^2 - a^3*H \
    + 2*a*alpha - 2*a^2 - 2*J*b^2*H + 2*b^2*H*alpha + 2*b^2 + 8*J^2*H*alpha - 2*J*H*alpha^2 - 2*J*alpha";

pub const PRINTED_P2: &str =
    "-8*J*a*H + 2*a*H*alpha + a^2*H + 2*a + b^2*H + 12*J^2*H - 4*J*H*alpha - 3*J + alpha";

pub const PRINTED_P3: &str = "8*J*a*b^2*H - 11*a*b^2*H*alpha + 4*a^2*b^2*H - 22*a*b^2 - 96*J^3*a*H - 64*J^2*a*H*alpha \
    + 108*J^2*a^2*H + 24*J^2*a + 6*J*a^2*H*alpha + 28*J*a*H*alpha^2 - 40*J*a^3*H + 30*J*a*alpha \
    - 34*J*a^2 + a^3*H*alpha - 3*a^2*H*alpha^2 - 3*a*H*alpha^3 + 5*a^4*H - 6*a^2*alpha + 4*a*alpha^2 \
    + 10*a^3 - 36*J^2*b^2*H + 30*J*b^2*H*alpha + 30*J*b^2 - 3*b^2*H*alpha^2 - b^4*H + 2*b^2*alpha \
    + 96*J^3*H*alpha - 44*J^2*H*alpha^2 - 24*J^2*alpha + 6*J*H*alpha^3 + 4*J*alpha^2";

pub const PRINTED_P4: &str = "-a*b^2*H - 24*J^2*a*H + 8*J*a*H*alpha + 8*J*a^2*H + 6*J*a - a*H*alpha^2 - a^2*H*alpha - a^3*H \
    - 2*a^2 + b^2*H*alpha + 2*b^2 + 24*J^3*H - 12*J^2*H*alpha - 6*J^2 + 2*J*H*alpha^2 + 3*J*alpha - alpha^2";

pub const PRINTED_P5: &str = "676*J^2*a*b^2*H - 514*J*a*b^2*H*alpha - 92*J*a^2*b^2*H - 900*J*a*b^2 + 94*a^2*b^2*H*alpha \
    + 51*a*b^2*H*alpha^2 - 20*a^3*b^2*H + 20*a*b^4*H + 12*a*b^2*alpha + 280*a^2*b^2 - 1824*J^4*a*H \
    - 1536*J^3*a*H*alpha + 2744*J^3*a^2*H + 456*J^3*a + 240*J^2*a^2*H*alpha + 1012*J^2*a*H*alpha^2 \
    - 1564*J^2*a^3*H + 692*J^2*a*alpha - 840*J^2*a^2 + 70*J*a^3*H*alpha - 234*J*a^2*H*alpha^2 \
    - 210*J*a*H*alpha^3 + 404*J*a^4*H - 246*J*a^2*alpha - 202*J*a*alpha^2 + 460*J*a^3 - 17*a^4*H*alpha \
    + 15*a^3*H*alpha^2 + 27*a^2*H*alpha^3 + 15*a*H*alpha^4 - 40*a^5*H + 20*a^3*alpha + 46*a^2*alpha^2 \
    + 14*a*alpha^3 - 80*a^4 - 840*J^3*b^2*H + 696*J^2*b^2*H*alpha + 672*J^2*b^2 - 138*J*b^2*H*alpha^2 \
    - 16*J*b^4*H + 38*J*b^2*alpha + 9*b^2*H*alpha^3 - 9*b^4*H*alpha - 18*b^2*alpha^2 - 24*b^4 + 1824*J^4*H*alpha \
    - 1208*J^3*H*alpha^2 - 456*J^3*alpha + 312*J^2*H*alpha^3 + 148*J^2*alpha^2 - 30*J*H*alpha^4 - 12*J*alpha^3";

pub const PRINTED_P6: &str = "-7*a*b^2*H*alpha + 4*a^2*b^2*H - 22*a*b^2 - 336*J^3*a*H + 160*J^2*a*H + 184*J^2*a^2*H*alpha \
    + 84*J^2*a - 36*J*a*H*alpha^2 - 48*J*a^2*H*alpha - 48*J*a^3*H - 12*J*a*alpha - 50*J*a^2 \
    + 3*a*H*alpha^3 + 5*a^2*H*alpha^2 + 5*a^3*H*alpha + 5*a^4*H + 2*a*alpha^2 + 2*a^2*alpha + 10*a^3 \
    - 24*J^2*b^2*H + 24*J*b^2*H*alpha + 38*J*b^2 - 3*b^2*H*alpha^2 - b^4*H - 2*b^2*alpha + 240*J^4*H \
    - 168*J^3*H*alpha - 60*J^3 + 52*J^2*H*alpha^2 + 42*J^2*alpha - 6*J*H*alpha^3 - 22*J*alpha^2 + 4*alpha^3";

pub fn printed() -> [Poly; 6] {
    [
        PRINTED_P1, PRINTED_P2, PRINTED_P3, PRINTED_P4, PRINTED_P5, PRINTED_P6,
    ]
    .map(p)
}

/// `16b⁸ + 8b⁶α² + b⁴α⁴ = b⁴(4b² + α²)²`.
pub fn target() -> Poly {
    p("16*b^8 + 8*b^6*alpha^2 + b^4*alpha^4")
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorMismatch {
    pub which: String,
    /// `monomial: computed − printed`.
    pub monomials: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorReport {
    pub computed: Vec<Poly>,
    pub printed: Vec<Poly>,
    pub mismatches: Vec<GeneratorMismatch>,
}

impl GeneratorReport {
    pub fn mismatched_monomials(&self) -> usize {
        self.mismatches.iter().map(|m| m.monomials.len()).sum()
    }
}

/// `P₁, P₂` as printed, `P₃ = ∇(P₁)`, `P₄ = ∇(P₂)/2`, `P₅ = ∇(P₃)`, `P₆ = ∇(P₄)`,
/// each derived from the computed predecessor and compared with the printed one.
pub fn generator_report() -> GeneratorReport {
    let pr = printed();
    let p3 = nabla_h(&pr[0]);
    let p4 = nabla_h(&pr[1]).scale(&q(1, 2));
    let p5 = nabla_h(&p3);
    let p6 = nabla_h(&p4);
    let computed = vec![pr[0].clone(), pr[1].clone(), p3, p4, p5, p6];
    let mismatches = (2..6)
        .filter_map(|k| {
            let diff = computed[k].differing_monomials(&pr[k]);
            (!diff.is_empty()).then(|| GeneratorMismatch {
                which: format!("P{}", k + 1),
                monomials: diff,
            })
        })
        .collect();
    GeneratorReport {
        computed,
        printed: pr.to_vec(),
        mismatches,
    }
}

/// The derived generators, or the first disagreement with the printed forms.
pub fn generators() -> Result<[Poly; 6]> {
    let r = generator_report();
    if let Some(m) = r.mismatches.first() {
        return Err(Error::GeneratorMismatch {
            which: m.which.clone(),
            count: m.monomials.len(),
            monomials: m.monomials.clone(),
        });
    }
    Ok(r.computed.try_into().expect("six generators"))
}

#[derive(Debug, Clone, Serialize)]
pub struct GroebnerPipeline {
    pub generators: GeneratorReport,
    pub basis: GroebnerBasis,
    pub target_remainder: Poly,
    pub s_pair_failures: Vec<(usize, usize)>,
    pub reduced: bool,
}

impl GroebnerPipeline {
    pub fn target_in_ideal(&self) -> bool {
        self.target_remainder.is_zero()
    }
}

/// Basis of the derived generators, the membership of the target and the post-hoc certificate.
pub fn pipeline(budget: &Budget) -> Result<GroebnerPipeline> {
    let generators = generator_report();
    let basis = buchberger(&generators.computed, budget)?;
    let target_remainder = normal_form(&target(), &basis);
    let s_pair_failures = s_pair_failures(&basis.polys);
    let reduced = is_reduced(&basis.polys);
    Ok(GroebnerPipeline {
        generators,
        basis,
        target_remainder,
        s_pair_failures,
        reduced,
    })
}

/// Exact contradiction in the `α = a` case.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaEqualsA {
    /// `b²H² + 3JH + 6`, the first relation cleared of `1/H`.
    pub first: Poly,
    /// `5b²H² − 12JH + 30`.
    pub second: Poly,
    /// `H·∇(first)/h` with `α = a` and `a = 2J − 2/H`, cleared of denominators.
    pub differentiated: Poly,
    /// `differentiated = 2·second + 2(2JH − 5)·first`.
    pub derivative_identity: bool,
    pub multipliers: (String, String),
    /// `b²H² + 6`.
    pub combination: Poly,
    pub verified: bool,
}

pub fn alpha_equals_a_branch() -> AlphaEqualsA {
    let first = p("b^2*H^2 + 3*J*H + 6");
    let second = p("5*b^2*H^2 - 12*J*H + 30");
    let with_alpha = nabla_h(&first).substitute_ratio(ALPHA, &Poly::var(A), &Poly::int(1));
    // λ = 6J − 3a = 6/H  ⇔  a = (2JH − 2)/H
    let differentiated = with_alpha.substitute_ratio(A, &p("2*J*H - 2"), &Poly::var(H));
    let expected = second.scale(&q(2, 1)).add(&p("4*J*H - 10").mul(&first));
    let derivative_identity = differentiated == expected;
    let (m1, m2) = (q(4, 9), q(1, 9));
    let combination = first.scale(&m1).add(&second.scale(&m2));
    let verified = combination == p("b^2*H^2 + 6");
    AlphaEqualsA {
        first,
        second,
        differentiated,
        derivative_identity,
        multipliers: (m1.to_string(), m2.to_string()),
        combination,
        verified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_on_variables() {
        assert!(nabla_h(&Poly::var(J)).is_zero());
        assert_eq!(nabla_h(&Poly::var(B)), p("8*J*b - 4*a*b - alpha*b"));
    }

    #[test]
    fn printed_p2_and_p6_terms() {
        let pr = printed();
        assert_eq!(pr[1].coefficient(Monomial::new([2, 0, 0, 0, 1])), q(12, 1));
        assert_eq!(
            pr[5].coefficient(Monomial::new([3, 1, 0, 0, 1])),
            q(-336, 1)
        );
    }

    #[test]
    fn p4_matches_print() {
        let g = generator_report();
        assert_eq!(g.computed[3], g.printed[3]);
        assert_eq!(
            g.computed[3].coefficient(Monomial::new([3, 0, 0, 0, 1])),
            q(24, 1)
        );
    }

    #[test]
    fn p5_consistent_with_derived_p3() {
        let g = generator_report();
        assert_eq!(g.computed[4], g.printed[4]);
    }

    #[test]
    fn alpha_equals_a_contradiction() {
        let c = alpha_equals_a_branch();
        assert!(c.derivative_identity, "{}", c.differentiated);
        assert!(c.verified);
        for (b, h) in [(0.0, 1.0), (3.0, 0.5), (-2.0, 7.0)] {
            assert!(c.combination.eval(&[0.0, 0.0, b, 0.0, h]) >= 6.0);
        }
    }
}
