use comax::analysis::{find_roots, real_root_count, vieta_errors, RootOptions};
use comax::closed_forms::{di_closed_form, di_structured, independence_closed_form, independence_structured};
use comax::enumeration::{
    for_each_maximal_independent_set, independent_sets_by_size, maximal_independent_sets, verify_dominating_independent,
};
use comax::graph::{comaximal_graph_direct, comaximal_graph_structured, DEFAULT_VERTEX_CAPACITY};
use comax::number_theory::totient;
use comax::{Error, IntPolynomial};

#[test]
fn closed_forms_match_structured_where_defined() {
    let mut covered = 0;
    for n in 2..=600u64 {
        match di_closed_form(n) {
            Ok(f) => {
                assert_eq!(f.polynomial, di_structured(n).unwrap(), "D_i at {n}");
                covered += 1;
            }
            Err(Error::UnsupportedShape { .. }) => {}
            Err(e) => panic!("D_i at {n}: {e}"),
        }
        match independence_closed_form(n) {
            Ok(f) => assert_eq!(f.polynomial, independence_structured(n).unwrap(), "I at {n}"),
            Err(Error::UnsupportedShape { .. }) => {}
            Err(e) => panic!("I at {n}: {e}"),
        }
    }
    assert!(covered > 500);
}

#[test]
fn structured_graph_has_the_same_counts_as_direct() {
    for n in 2..=60u64 {
        let (direct, _) = comaximal_graph_direct(n, DEFAULT_VERTEX_CAPACITY).unwrap();
        let built = comaximal_graph_structured(n, DEFAULT_VERTEX_CAPACITY).unwrap();
        assert_eq!(direct.order(), built.order(), "n = {n}");
        assert_eq!(direct.edge_count(), built.edge_count(), "n = {n}");
        let mut a: Vec<usize> = (0..direct.order()).map(|v| direct.degree(v)).collect();
        let mut b: Vec<usize> = (0..built.order()).map(|v| built.degree(v)).collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b, "n = {n}");
        assert_eq!(
            maximal_independent_sets(&direct, 150).unwrap(),
            maximal_independent_sets(&built, 150).unwrap()
        );
    }
}

#[test]
fn every_enumerated_set_dominates() {
    for n in [12u64, 30, 36, 45, 60] {
        let (g, _) = comaximal_graph_direct(n, DEFAULT_VERTEX_CAPACITY).unwrap();
        let mut count = 0;
        for_each_maximal_independent_set(&g, 150, |set| {
            let members: Vec<usize> = set.iter().collect();
            assert!(verify_dominating_independent(&g, &members).unwrap(), "n = {n}: {members:?}");
            count += 1;
        })
        .unwrap();
        let total: usize = di_structured(n)
            .unwrap()
            .terms()
            .map(|(_, c)| usize::try_from(c).unwrap())
            .sum();
        assert_eq!(count, total);
    }
}

#[test]
fn linear_coefficients() {
    for n in 2..=300u64 {
        let d = di_structured(n).unwrap();
        let i = independence_structured(n).unwrap();
        assert_eq!(i.coefficient(1), n.into(), "every vertex is independent at {n}");
        let universal = if comax::number_theory::is_prime(n) { n } else { totient(n).unwrap() };
        assert_eq!(d.coefficient(1), universal.into(), "n = {n}");
    }
}

#[test]
fn oracle_limits_are_enforced() {
    let (g, _) = comaximal_graph_direct(120, DEFAULT_VERTEX_CAPACITY).unwrap();
    assert!(matches!(independent_sets_by_size(&g, 100), Err(Error::Capacity { .. })));
    assert!(matches!(maximal_independent_sets(&g, 119), Err(Error::Capacity { .. })));
}

#[test]
fn wide_clustered_zeros_are_accurate() {
    // 2^k x + (1+x)^(2^k) has zeros on a small circle around −1, where the
    // coefficient sums near |z| = 2 exceed 10^30
    let opts = RootOptions::default();
    for k in [6u32, 7] {
        let m = 1u64 << k;
        let p = &IntPolynomial::monomial(1, m) + &IntPolynomial::binomial_power(m).unwrap();
        assert_eq!(p, independence_structured(2 * m).unwrap());
        let roots = find_roots(&p, &opts).unwrap();
        let (sum, prod) = vieta_errors(&p, &roots).unwrap();
        assert!(sum < 1e-12 && prod < 1e-12, "k = {k}: {sum:e} {prod:e}");
        // each zero satisfies (1+z)^m = −m z exactly, so |1+z| = (m|z|)^(1/m)
        for r in &roots {
            let z = r.z();
            let lhs = (z + 1.0).norm().ln() * m as f64;
            let rhs = (m as f64 * z.norm()).ln();
            assert!((lhs - rhs).abs() < 1e-9, "k = {k}: {z}");
        }
    }
}

#[test]
fn real_zero_count_methods_agree() {
    let opts = RootOptions::default();
    for n in 2..=120u64 {
        for p in [di_structured(n).unwrap(), independence_structured(n).unwrap()] {
            let c = real_root_count(&p, &opts).unwrap();
            assert_eq!(c.numeric, c.grid, "n = {n}");
        }
    }
}
