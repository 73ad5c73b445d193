use super::KaroubiError;
use crate::codes::CentralBlockMap;
use crate::pseudowords::{quotient_equal, term_block_code, OmegaTerm, QuotientVerdict, TestBattery};

/// An arrow `(e, u, f)` of the Karoubi envelope of a free profinite
/// semigroup, given by ω-term witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermArrow {
    pub e: OmegaTerm,
    pub u: OmegaTerm,
    pub f: OmegaTerm,
}

impl TermArrow {
    /// Checks in every test that `e` and `f` are idempotent and `euf = u`.
    pub fn new(e: OmegaTerm, u: OmegaTerm, f: OmegaTerm, tests: &TestBattery) -> Result<Self, KaroubiError> {
        let arrow = TermArrow { e, u, f };
        arrow.validate(tests)?;
        Ok(arrow)
    }

    pub fn identity(e: OmegaTerm) -> Self {
        TermArrow { e: e.clone(), u: e.clone(), f: e }
    }

    pub fn validate(&self, tests: &TestBattery) -> Result<(), KaroubiError> {
        for (name, x) in [("source", &self.e), ("target", &self.f)] {
            if !tests.idempotent_in_all(x)? {
                return Err(KaroubiError::InvalidArrow(format!("{name} object is not idempotent")));
            }
        }
        let euf = self.e.concat(&self.u).concat(&self.f);
        if let QuotientVerdict::DistinguishedBy(t) = quotient_equal(&euf, &self.u, tests)? {
            return Err(KaroubiError::InvalidArrow(format!("e·u·f differs from u in {t}")));
        }
        Ok(())
    }

    /// `(e,u,f)(f',v,g) = (e,uv,g)` when `f` and `f'` agree in every test.
    pub fn then(&self, other: &TermArrow, tests: &TestBattery) -> Result<TermArrow, KaroubiError> {
        if let QuotientVerdict::DistinguishedBy(t) = quotient_equal(&self.f, &other.e, tests)? {
            return Err(KaroubiError::InvalidArrow(format!("arrows are not composable: objects differ in {t}")));
        }
        Ok(TermArrow { e: self.e.clone(), u: self.u.concat(&other.u).canonical(), f: other.f.clone() })
    }

    /// Componentwise quotient equality.
    pub fn quotient_eq(&self, other: &TermArrow, tests: &TestBattery) -> Result<bool, KaroubiError> {
        for (x, y) in [(&self.e, &other.e), (&self.u, &other.u), (&self.f, &other.f)] {
            if !quotient_equal(x, y, tests)?.is_equal() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `Φ̄(𝔱_k(x)·y·𝔟_k(z))` for a map of wing `k`.
fn coded_middle(phi: &CentralBlockMap, x: &OmegaTerm, y: &OmegaTerm, z: &OmegaTerm) -> Result<OmegaTerm, KaroubiError> {
    let k = phi.wing();
    let framed = OmegaTerm::word(x.suffix_k(k)?).concat(y).concat_word(&z.prefix_k(k)?);
    Ok(term_block_code(phi, &framed)?)
}

/// `Φ_K(e) = Φ̄(𝔱_k(e)·e·𝔟_k(e))`.
pub fn induced_on_idempotent(phi: &CentralBlockMap, e: &OmegaTerm) -> Result<OmegaTerm, KaroubiError> {
    coded_middle(phi, e, e, e)
}

/// `(Φ_K(e), Φ̄(𝔱_k(e)·u·𝔟_k(f)), Φ_K(f))`, after checking the arrow
/// against `source_tests`.
pub fn induced_on_arrow(
    phi: &CentralBlockMap,
    arrow: &TermArrow,
    source_tests: &TestBattery,
) -> Result<TermArrow, KaroubiError> {
    arrow.validate(source_tests)?;
    Ok(TermArrow {
        e: induced_on_idempotent(phi, &arrow.e)?,
        u: coded_middle(phi, &arrow.e, &arrow.u, &arrow.f)?,
        f: induced_on_idempotent(phi, &arrow.f)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{higher_block_map, BlockMap};
    use crate::corpus;
    use crate::pseudowords::TestSemigroup;
    use crate::semigroups::syntactic_semigroup;
    use crate::words::{Alphabet, Letter};

    fn battery(shift: &crate::shifts::Shift, seed: u64) -> TestBattery {
        let syn = syntactic_semigroup(shift).unwrap();
        TestBattery::random(shift.alphabet(), 3, 40, seed).with(TestBattery::syntactic("X", &syn))
    }

    fn t(a: &Alphabet, s: &str) -> OmegaTerm {
        OmegaTerm::parse(a, s).unwrap()
    }

    #[test]
    fn one_block_swap() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let swap = BlockMap::letter_map(ab.clone(), ab.clone(), |l| Letter(1 - l.0)).centralize();
        let img = induced_on_idempotent(&swap, &t(&ab, "(ab)^w")).unwrap();
        assert_eq!(img.format(&ab), "(ba)^w");
    }

    #[test]
    fn higher_block_idempotent() {
        let x = corpus::fixed_point();
        let a = x.alphabet().clone();
        let up = higher_block_map(&a, 2).centralize();
        let img = induced_on_idempotent(&up, &t(&a, "(a)^w")).unwrap();
        let y = up.apply_to_shift(&x).unwrap();
        assert!(battery(&y, 1).idempotent_in_all(&img).unwrap());
    }

    #[test]
    fn functor_laws_on_golden() {
        let x = corpus::golden();
        let a = x.alphabet().clone();
        let up = higher_block_map(&a, 2).centralize();
        let y = up.apply_to_shift(&x).unwrap();
        let src = battery(&x, 2);
        let dst = battery(&y, 3);
        let e = t(&a, "(a)^w");
        let f = t(&a, "(ab)^w");
        let g = t(&a, "(aab)^w");
        let s = TermArrow::new(e.clone(), e.concat(&t(&a, "a")).concat(&f), f.clone(), &src).unwrap();
        let r = TermArrow::new(f.clone(), f.concat(&t(&a, "a")).concat(&g), g.clone(), &src).unwrap();
        let id = induced_on_arrow(&up, &TermArrow::identity(e.clone()), &src).unwrap();
        assert_eq!(id.e, id.u);
        let both = induced_on_arrow(&up, &s.then(&r, &src).unwrap(), &src).unwrap();
        let fs = induced_on_arrow(&up, &s, &src).unwrap();
        let fr = induced_on_arrow(&up, &r, &src).unwrap();
        assert!(fs.then(&fr, &dst).unwrap().quotient_eq(&both, &dst).unwrap());
    }

    #[test]
    fn wider_map_gives_same_arrow() {
        let x = corpus::even();
        let a = x.alphabet().clone();
        let up = higher_block_map(&a, 2).centralize();
        let wide = up.widen(2);
        let y = up.apply_to_shift(&x).unwrap();
        let src = battery(&x, 4);
        let dst = battery(&y, 5);
        let e = t(&a, "(a)^w");
        let f = t(&a, "(bb)^w");
        let arrow = TermArrow::new(e.clone(), e.concat(&t(&a, "abb")).concat(&f), f, &src).unwrap();
        let one = induced_on_arrow(&up, &arrow, &src).unwrap();
        let two = induced_on_arrow(&wide, &arrow, &src).unwrap();
        assert!(one.quotient_eq(&two, &dst).unwrap());
    }

    #[test]
    fn invalid_arrow() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let z3 = std::sync::Arc::new(crate::semigroups::FiniteSemigroup::cyclic_group(3));
        let tests = TestBattery::random(&ab, 5, 40, 9).with(TestSemigroup {
            name: "Z3".into(),
            assignment: vec![z3.generators()[0]; 2],
            semigroup: z3,
        });
        let e = t(&ab, "(a)^w");
        let f = t(&ab, "(b)^w");
        let bad = TermArrow::new(e.clone(), t(&ab, "b"), f.clone(), &tests);
        assert!(matches!(bad, Err(KaroubiError::InvalidArrow(_))));
        let not_idem = TermArrow::new(t(&ab, "a"), t(&ab, "a"), t(&ab, "a"), &tests);
        assert!(matches!(not_idem, Err(KaroubiError::InvalidArrow(_))));
    }
}
