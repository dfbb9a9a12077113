use abhy_core::abhy::SliceSpec;
use abhy_core::exact::{hermite_normal_form, left_kernel_basis, rank, solve_affine, AffineSolution};
use abhy_core::{
    a_polytope, explore, fixtures, minkowski_sum, mutate_matrix, mutate_seed, outer_normal_fan, fans_equal,
    principal_extension, u_polytope, universal_extension, ExchangeMatrix, IntMatrix, RatMatrix, Rational,
    Seed, UniversalMatrix, VPolytope, DEFAULT_CAP,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn exchange_matrix() -> impl Strategy<Value = ExchangeMatrix> {
    (1usize..=4, 0usize..=2).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(1i64..=3, n),
            prop::collection::vec(-2i64..=2, n * n),
            prop::collection::vec(-3i64..=3, m * n),
        )
            .prop_map(move |(d, s, frozen)| {
                let mut rows = vec![vec![0i64; n]; n + m];
                for i in 0..n {
                    for j in i + 1..n {
                        rows[i][j] = s[i * n + j] * d[j];
                        rows[j][i] = -s[i * n + j] * d[i];
                    }
                }
                for r in 0..m {
                    rows[n + r].copy_from_slice(&frozen[r * n..(r + 1) * n]);
                }
                let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                ExchangeMatrix::from_i64(&refs).unwrap()
            })
    })
}

fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-6i64..=6, r * c).prop_map(move |xs| {
            let rows: Vec<Vec<BigInt>> = xs.chunks(c).map(|ch| ch.iter().map(|&x| x.into()).collect()).collect();
            IntMatrix::from_rows(c, &rows).unwrap()
        })
    })
}

/// Bareiss fraction-free determinant.
fn det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = x;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}

fn positive_c(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((1i64..=12, 1i64..=5), len)
        .prop_map(|xs| xs.into_iter().map(|(p, q)| Rational::new(p.into(), q.into())).collect())
}

fn small_fixture() -> impl Strategy<Value = (&'static str, IntMatrix)> {
    prop::sample::select(fixtures::small())
}

fn universal(b: &IntMatrix) -> UniversalMatrix {
    universal_extension(b, DEFAULT_CAP).unwrap()
}

proptest! {
    #[test]
    fn matrix_mutation_is_an_involution(b in exchange_matrix()) {
        for k in 0..b.n() {
            prop_assert_eq!(mutate_matrix(&mutate_matrix(&b, k).unwrap(), k).unwrap(), b.clone());
        }
    }

    #[test]
    fn mutation_preserves_skew_symmetrizability(b in exchange_matrix(), k in 0usize..4) {
        let k = k % b.n();
        let mu = mutate_matrix(&b, k).unwrap();
        prop_assert!(abhy_core::is_skew_symmetrizable(&mu.principal_part()).is_some());
    }

    #[test]
    fn hnf_is_a_unimodular_echelon_form(m in int_matrix(4, 5)) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert_eq!(det(&u).abs(), BigInt::one());
        let r = rank(&m);
        let mut last: Option<usize> = None;
        for i in 0..h.rows() {
            let pivot = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
            match pivot {
                None => prop_assert!(i >= r),
                Some(p) => {
                    prop_assert!(i < r);
                    prop_assert!(last.is_none_or(|l| p > l));
                    prop_assert!(h[(i, p)].is_positive());
                    for above in 0..i {
                        prop_assert!(!h[(above, p)].is_negative() && h[(above, p)] < h[(i, p)]);
                    }
                    last = Some(p);
                }
            }
        }
    }

    #[test]
    fn left_kernel_is_a_basis(m in int_matrix(5, 3)) {
        let k = left_kernel_basis(&m);
        prop_assert_eq!(k.rows(), m.rows() - rank(&m));
        if k.rows() > 0 {
            prop_assert!(k.mul(&m).unwrap().is_zero());
            prop_assert_eq!(rank(&k), k.rows());
        }
    }

    #[test]
    fn affine_solutions_round_trip(m in int_matrix(4, 4), x in prop::collection::vec(-5i64..=5, 4)) {
        let a: RatMatrix = m.to_rational();
        let x: Vec<Rational> = x[..a.cols()].iter().map(|&t| Rational::from_integer(t.into())).collect();
        let b = a.mul_vec(&x).unwrap();
        match solve_affine(&a, &b).unwrap() {
            AffineSolution::Inconsistent => prop_assert!(false, "consistent system reported inconsistent"),
            AffineSolution::Consistent { particular, homogeneous } => {
                prop_assert_eq!(a.mul_vec(&particular).unwrap(), b);
                prop_assert_eq!(homogeneous.len(), a.cols() - abhy_core::exact::rational_rank(&a));
                for h in &homogeneous {
                    prop_assert!(a.mul_vec(h).unwrap().iter().all(Zero::is_zero));
                }
            }
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minkowski_sum_commutes_and_associates(
        p in prop::collection::vec((-4i64..=4, -4i64..=4), 1..6),
        q in prop::collection::vec((-4i64..=4, -4i64..=4), 1..6),
        r in prop::collection::vec((-4i64..=4, -4i64..=4), 1..4),
    ) {
        let poly = |pts: &Vec<(i64, i64)>| {
            VPolytope::from_points(2, pts.iter().map(|&(x, y)| vec![Rational::from_integer(x.into()), Rational::from_integer(y.into())]).collect::<Vec<_>>()).unwrap()
        };
        let (p, q, r) = (poly(&p), poly(&q), poly(&r));
        prop_assert_eq!(minkowski_sum(&p, &q).unwrap(), minkowski_sum(&q, &p).unwrap());
        prop_assert_eq!(
            minkowski_sum(&minkowski_sum(&p, &q).unwrap(), &r).unwrap(),
            minkowski_sum(&p, &minkowski_sum(&q, &r).unwrap()).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vertex_count_is_cluster_count((name, b) in small_fixture(), seed in any::<u64>()) {
        let u = universal(&b);
        let c: Vec<Rational> = (0..u.v() - u.n())
            .map(|i| Rational::new(((seed >> (i % 16)) % 7 + 1).into(), ((seed >> (i % 13)) % 3 + 1).into()))
            .collect();
        let up = u_polytope(&SliceSpec::new(&u, &c).unwrap()).unwrap();
        prop_assert_eq!(up.vertices().len(), u.dual_atlas().num_clusters(), "{}", name);
    }

    #[test]
    fn rank_two_slices_match_line_intersections(fixture in 0usize..2, c in positive_c(4)) {
        let b = [fixtures::a2(), fixtures::b2()][fixture].clone();
        let u = universal(&b);
        let c = &c[..u.v() - 2];
        let spec = SliceSpec::new(&u, c).unwrap();
        let a = a_polytope(&spec, None).unwrap();
        prop_assert_eq!(a.vertices().to_vec(), polygon_oracle(&spec));
    }

    #[test]
    fn scaling_c_keeps_the_normal_fan(c in positive_c(6)) {
        let u = universal(&fixtures::a3());
        let c = &c[..u.v() - u.n()];
        let twice: Vec<Rational> = c.iter().map(|x| x * Rational::from_integer(2.into())).collect();
        let a = a_polytope(&SliceSpec::new(&u, c).unwrap(), None).unwrap();
        let a2 = a_polytope(&SliceSpec::new(&u, &twice).unwrap(), None).unwrap();
        prop_assert_eq!(a.vertices().len(), a2.vertices().len());
        prop_assert_eq!(a.scale(&Rational::from_integer(2.into())), a2.clone());
        let cmp = fans_equal(&outer_normal_fan(&a).unwrap().fan, &outer_normal_fan(&a2).unwrap().fan);
        prop_assert!(cmp.equal, "{:?}", cmp.mismatch);
    }

    #[test]
    fn initial_seed_changes_the_polytope(c in positive_c(3)) {
        let b = fixtures::a2();
        let moved = mutate_matrix(&ExchangeMatrix::new(b.clone()).unwrap(), 0).unwrap().principal_part();
        let a = a_polytope(&SliceSpec::new(&universal(&b), &c).unwrap(), None).unwrap();
        let a_moved = a_polytope(&SliceSpec::new(&universal(&moved), &c).unwrap(), None).unwrap();
        prop_assert_ne!(a.normalized_translation(), a_moved.normalized_translation());
    }
}

/// Vertices of the polygon `A_c` for a rank-2 slice, found by intersecting
/// every pair of lines `w_k = 0` written in the coordinates `(w_1, w_2)`.
fn polygon_oracle(spec: &SliceSpec) -> Vec<Vec<Rational>> {
    let slice = spec.slice();
    let v = slice.ambient_dim();
    // w as an affine function of (w1, w2): value at the origin and at the unit vectors
    let solve_at = |x: i64, y: i64| -> Vec<Rational> {
        let mut a = slice.coefficient_matrix();
        let mut b = slice.rhs();
        let mut fix = |j: usize, val: i64| {
            let mut row = vec![Rational::zero(); v];
            row[j] = Rational::one();
            a = a.vstack(&RatMatrix::from_rows(v, &[row]).unwrap()).unwrap();
            b.push(Rational::from_integer(val.into()));
        };
        fix(0, x);
        fix(1, y);
        solve_affine(&a, &b).unwrap().unique().unwrap().clone()
    };
    let (o, ex, ey) = (solve_at(0, 0), solve_at(1, 0), solve_at(0, 1));
    let lines: Vec<[Rational; 3]> =
        (0..v).map(|k| [&ex[k] - &o[k], &ey[k] - &o[k], o[k].clone()]).collect();
    let feasible = |x: &Rational, y: &Rational| lines.iter().all(|[a, b, c]| !(a * x + b * y + c).is_negative());
    let mut out = std::collections::BTreeSet::new();
    for i in 0..v {
        for j in i + 1..v {
            let [a1, b1, c1] = &lines[i];
            let [a2, b2, c2] = &lines[j];
            let d = a1 * b2 - a2 * b1;
            if d.is_zero() {
                continue;
            }
            let x = (b1 * c2 - b2 * c1) / &d;
            let y = (a2 * c1 - a1 * c2) / &d;
            if feasible(&x, &y) {
                out.insert(vec![x, y]);
            }
        }
    }
    out.into_iter().collect()
}

#[test]
fn seed_mutation_is_an_involution_on_fixtures() {
    for (name, b) in fixtures::small() {
        let seed = Seed::initial(principal_extension(&b).unwrap());
        for k in 0..b.rows() {
            assert_eq!(mutate_seed(&mutate_seed(&seed, k).unwrap(), k).unwrap(), seed, "{name}");
        }
    }
}

#[test]
fn f_polynomials_have_constant_term_one_and_positive_coefficients() {
    for (name, b) in fixtures::small() {
        let atlas = explore(&principal_extension(&b).unwrap(), DEFAULT_CAP).unwrap();
        for f in abhy_core::cluster::f_polynomials(&atlas).unwrap() {
            assert!(f.constant_term().is_one(), "{name}: {f}");
            assert!(f.terms().all(|(_, c)| c.is_positive()), "{name}: {f}");
        }
    }
}

#[test]
fn univ_compatibility_for_single_steps() {
    for (name, b) in fixtures::small() {
        for k in 0..b.rows() {
            assert!(abhy_core::check_univ_compatibility(&b, &[k], DEFAULT_CAP).unwrap().agree, "{name} μ{}", k + 1);
        }
    }
}
