use lfree::bounds::{hybrid_an, interval_in, mu_formula_all, residue_tn, MuCase};
use lfree::equation::CanonicalTriple;
use lfree::{is_free, parse_equation, IntegerSet, LinearEquation, SolutionHypergraph};
use proptest::prelude::*;

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((-9i64..=9).prop_filter("nonzero", |a| *a != 0), 2..=5)
}

fn subset(n: u32) -> impl Strategy<Value = IntegerSet> {
    prop::collection::vec(any::<bool>(), n as usize)
        .prop_map(move |bits| IntegerSet::from_predicate(n, |v| bits[v as usize - 1]))
}

const TEST_EQUATIONS: &[&str] = &[
    "x+y=z",
    "x+y=2z",
    "2x+y=z",
    "3x+2y=2z",
    "x1+x2=x3+x4",
    "x+y=z+1",
    "x+2y=3z",
    "4x+4y=2z-2w",
];

proptest! {
    #[test]
    fn parse_print_roundtrip(c in coeffs(), b in -20i64..=20) {
        let l = LinearEquation::new(c, b).unwrap();
        let printed = l.to_string();
        prop_assert_eq!(parse_equation(&printed).unwrap(), l);
    }

    #[test]
    fn canonical_triple_ignores_scaling(p in 1i64..30, q in 1i64..30, r in 1i64..30, c in 1i64..=10) {
        let l = LinearEquation::triple(p, q, r).unwrap();
        let base = CanonicalTriple::from_equation(&l).unwrap();
        prop_assert_eq!(CanonicalTriple::from_equation(&l.scaled(c).unwrap()).unwrap(), base);
    }

    #[test]
    fn scaling_keeps_free_sets(idx in 0..TEST_EQUATIONS.len(), c in 2i64..=3, s in subset(14)) {
        let l = parse_equation(TEST_EQUATIONS[idx]).unwrap();
        let scaled = l.scaled(c).unwrap();
        if l.rhs() == 0 {
            prop_assert_eq!(is_free(&l, &s), is_free(&scaled, &s));
        }
    }

    #[test]
    fn triviality_is_permutation_invariant(m in 1u32..20, k in 1u32..20, swap in 0usize..2) {
        // x1+x2=x3+x4: positions 0,1 share a coefficient, as do 2,3
        let l = parse_equation("x1+x2=x3+x4").unwrap();
        let x = [m, k, k, m];
        let mut y = x;
        y.swap(2 * swap, 2 * swap + 1);
        prop_assert_eq!(l.is_trivial_solution(&x).unwrap(), l.is_trivial_solution(&y).unwrap());
        prop_assert!(l.is_trivial_solution(&x).unwrap());
    }

    #[test]
    fn constant_tuples_are_trivial(c in coeffs(), m in 1u32..50) {
        let total: i64 = c.iter().sum();
        let mut c = c;
        let last = c.len() - 1;
        c[last] -= total;
        prop_assume!(c[last] != 0);
        let l = LinearEquation::new(c, 0).unwrap();
        prop_assert!(l.is_translation_invariant());
        prop_assert!(l.is_trivial_solution(&vec![m; l.arity()]).unwrap());
    }
}

#[test]
fn independent_iff_free() {
    for text in TEST_EQUATIONS {
        let l = parse_equation(text).unwrap();
        for n in [1, 5, 10, 14] {
            let h = SolutionHypergraph::build(&l, n);
            for mask in 0u32..1 << n {
                let s = IntegerSet::from_members(n, (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1));
                assert_eq!(h.is_independent(&s), is_free(&l, &s), "{text} n={n} {s:?}");
            }
        }
    }
}

#[test]
fn solutions_satisfy_and_edges_grow() {
    for text in TEST_EQUATIONS {
        let l = parse_equation(text).unwrap();
        for sol in lfree::enumerate_solutions(&l, 18) {
            assert!(l.is_satisfied_by(&sol));
        }
        for n in 1..24 {
            let small = SolutionHypergraph::build(&l, n);
            let big = SolutionHypergraph::build(&l, n + 1);
            for e in small.edges() {
                assert!(big.edges().contains(&e.with_universe(n + 1)), "{text} n={n} {e:?}");
            }
        }
    }
}

#[test]
fn constructions_are_free() {
    for t in CanonicalTriple::enumerate(8).into_iter().filter(|t| t.is_ordered()) {
        let l = t.equation();
        for n in 1..=60 {
            assert!(is_free(&l, &interval_in(&t, n)), "{t:?} I_{n}");
            assert!(is_free(&l, &residue_tn(&t, n)), "{t:?} T_{n}");
        }
    }
    let l = parse_equation("3x+2y=2z").unwrap();
    for n in 1..=200 {
        assert!(is_free(&l, &hybrid_an(n)), "A_{n}");
    }
}

#[test]
fn boundary_cases_agree() {
    for t in CanonicalTriple::enumerate(12).into_iter().filter(|t| t.is_ordered()) {
        if t.p() + t.q() == t.r() * t.q() {
            for n in 1..=60 {
                let values = mu_formula_all(&t, n).unwrap();
                let cases: Vec<MuCase> = values.iter().map(|v| v.case).collect();
                assert_eq!(cases, vec![MuCase::I, MuCase::Ii], "{t:?}");
                assert_eq!(values[0].value, values[1].value, "{t:?} n={n}");
            }
        }
    }
}
