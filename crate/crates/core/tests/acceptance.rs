//! The eight acceptance criteria, each printed as one PASS/FAIL line.
//! Runs without the libtest harness so the lines are always visible.

use std::time::{Duration, Instant};

use abhy_core::abhy::{unit_associahedron, SliceSpec};
use abhy_core::cluster::{f_polynomials, g_vectors, principal_grading};
use abhy_core::exact::{rational_rank, IntMatrix, RatVector, Rational};
use abhy_core::laurent::variables;
use abhy_core::universal::{positive_mesh_witnesses, relation_matrix};
use abhy_core::{
    associahedron_fan, build_slice, explore, fans_equal, fixtures, kernel_matrix, mesh_relations,
    minkowski_sum, moment_equations, moment_map_eval, mutate_matrix, mutate_seed, newton_polytope,
    outer_normal_fan, a_polytope, principal_extension, reduced_moment_image, u_polytope,
    universal_extension, ExchangeMatrix, LaurentPoly, MomentPoint, ReductionLevel, Seed, DEFAULT_CAP,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_i64_rows()
}

fn random_c_hat(rng: &mut ChaCha8Rng, n: usize, v: usize) -> RatVector {
    (0..v)
        .map(|i| {
            if i < n {
                Rational::from_integer(rng.gen_range(-5i64..=5).into())
            } else {
                Rational::new(rng.gen_range(1i64..=9).into(), rng.gen_range(1i64..=4).into())
            }
        })
        .collect()
}

fn golden_fixtures() -> Check {
    let b = fixtures::b2();
    let u = universal_extension(&b, DEFAULT_CAP).map_err(e)?;
    let univ = vec![vec![0, -1], vec![2, 0], vec![1, 0], vec![0, 1], vec![-1, 1], vec![-2, 1], vec![-1, 0], vec![0, -1]];
    ensure(rows(u.full().matrix()) == univ, "B^univ differs")?;
    let mu1 = mutate_matrix(u.full(), 0).map_err(e)?;
    let want1 = vec![vec![0, 1], vec![-2, 0], vec![-1, 0], vec![0, 1], vec![1, 0], vec![2, -1], vec![1, -1], vec![0, -1]];
    ensure(rows(mu1.matrix()) == want1, "μ1(B^univ) differs")?;
    let mu21 = mutate_matrix(&mu1, 1).map_err(e)?;
    let want21 = vec![vec![0, -1], vec![2, 0], vec![-1, 0], vec![0, -1], vec![1, 0], vec![0, 1], vec![-1, 1], vec![-2, 1]];
    ensure(rows(mu21.matrix()) == want21, "μ2μ1(B^univ) differs")?;

    // x1, x2, y1, y2 of the dual algebra with principal coefficients
    let vars = variables(&["x1", "x2", "y1", "y2"]);
    let poly = |terms: &[([i32; 4], i64)]| {
        LaurentPoly::from_terms(vars.clone(), terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
    };
    let expected = [
        poly(&[([-1, 1, 0, 0], 1), ([-1, 0, 1, 0], 1)]),
        poly(&[([-2, 1, 0, 0], 1), ([-2, 0, 1, 0], 2), ([-2, -1, 2, 0], 1), ([0, -1, 2, 1], 1)]),
        poly(&[([-1, 0, 0, 0], 1), ([-1, -1, 1, 0], 1), ([1, -1, 1, 1], 1)]),
        poly(&[([0, -1, 0, 0], 1), ([2, -1, 0, 1], 1)]),
    ];
    let atlas = u.dual_atlas();
    ensure(atlas.num_variables() == 6, "dual algebra does not have 6 variables")?;
    for (k, want) in expected.iter().enumerate() {
        let got = &atlas.variables()[k + 2];
        ensure(got == want, format!("x{} is {got}, expected {want}", k + 3))?;
    }
    let g: Vec<Vec<i64>> = g_vectors(atlas).map_err(e)?.into_iter().map(|g| g.0).collect();
    ensure(g[2..] == [vec![-1, 1], vec![-2, 1], vec![-1, 0], vec![0, -1]], "g-vectors differ")?;
    Ok("B^univ, μ1, μ2μ1, x3..x6 and their g-vectors reproduced".into())
}

fn kernel_criterion() -> Check {
    let u = universal_extension(&fixtures::b2(), DEFAULT_CAP).map_err(e)?;
    let k = kernel_matrix(&u).map_err(e)?;
    ensure(k.matrix().mul(u.full().matrix()).map_err(e)?.is_zero(), "K·B^univ ≠ 0")?;
    ensure(abhy_core::exact::rank(k.matrix()) == 6, "rank is not 6")?;
    ensure(k.is_normalized(), "torus block is not [I; 0]")?;
    let displayed = IntMatrix::from_i64(&[
        &[1, 0, 0, 1, 0, 0, 0, 0],
        &[0, 1, -2, 0, 0, 0, 0, 0],
        &[0, 0, 1, -1, 1, 0, 0, 0],
        &[0, 0, 0, 1, -2, 1, 0, 0],
        &[0, 0, 0, 0, 1, -1, 1, 0],
        &[0, 0, 0, 0, 0, 1, -2, 1],
    ]);
    let stacked = k.matrix().vstack(&displayed).map_err(e)?;
    ensure(rational_rank(&stacked.to_rational()) == 6, "row spans differ")?;
    Ok(format!("K is 6x8, normalized, spans the displayed kernel (identical: {})", *k.matrix() == displayed))
}

fn slice_strings() -> Check {
    let b = fixtures::b2();
    let ones = vec![Rational::from_integer(1.into()); 4];
    let spec = build_slice(&b, &ones, DEFAULT_CAP).map_err(e)?;
    let got: Vec<String> = spec.equations().iter().map(|q| q.symbolic()).collect();
    let want = ["w1 - w2 + w3 = c3", "w2 - 2w3 + w4 = c4", "w3 - w4 + w5 = c5", "w4 - 2w5 + w6 = c6"];
    ensure(got == want, format!("slice equations {got:?}"))?;
    let k = kernel_matrix(spec.universal()).map_err(e)?;
    let level = ReductionLevel::default_for(2, 6);
    let got: Vec<String> = moment_equations(&k, &level).map_err(e)?.iter().map(|q| q.symbolic()).collect();
    let want = [
        "u1 + w2 = c1",
        "u2 - 2w1 = c2",
        "w1 - w2 + w3 = c3",
        "w2 - 2w3 + w4 = c4",
        "w3 - w4 + w5 = c5",
        "w4 - 2w5 + w6 = c6",
    ];
    ensure(got == want, format!("moment equations {got:?}"))?;
    Ok("4 slice equations and 6 moment equations match".into())
}

fn main_theorem() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut cases = 0;
    for (name, b) in [("A1", fixtures::a1()), ("A2", fixtures::a2()), ("A3", fixtures::a3()), ("B2", fixtures::b2())] {
        let u = universal_extension(&b, DEFAULT_CAP).map_err(e)?;
        let k = kernel_matrix(&u).map_err(e)?;
        let clusters = u.dual_atlas().num_clusters();
        for _ in 0..20 {
            let c_hat = random_c_hat(&mut rng, u.n(), u.v());
            let level = ReductionLevel::new(c_hat, u.n()).map_err(e)?;
            let image = reduced_moment_image(&k, &level).map_err(e)?;
            let up = u_polytope(&SliceSpec::new(&u, level.c()).map_err(e)?).map_err(e)?;
            ensure(image == up, format!("{name}: vertex sets differ at ĉ = {:?}", level.values()))?;
            ensure(up.vertices().len() == clusters, format!("{name}: {} vertices", up.vertices().len()))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} random levels over A1, A2, A3, B2"))
}

fn newton_property() -> Check {
    let mut checked = 0;
    for (name, b) in fixtures::small() {
        let u = universal_extension(&b, DEFAULT_CAP).map_err(e)?;
        let fs = f_polynomials(&explore(&principal_extension(&b).map_err(e)?, DEFAULT_CAP).map_err(e)?).map_err(e)?;
        let (n, v) = (u.n(), u.v());
        let units: Vec<_> = (n..v).map(|i| unit_associahedron(&u, i)).collect::<Result<_, _>>().map_err(e)?;
        for i in n..v {
            ensure(newton_polytope(&fs[i]).map_err(e)? == units[i - n], format!("{name}: New(F{}) differs", i + 1))?;
            checked += 1;
        }
        for i in n..v {
            for j in i + 1..v {
                let lhs = newton_polytope(&(&fs[i] * &fs[j])).map_err(e)?;
                let rhs = minkowski_sum(&units[i - n], &units[j - n]).map_err(e)?;
                ensure(lhs == rhs, format!("{name}: New(F{}F{}) differs", i + 1, j + 1))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} polytope identities over A1, A2, A3, B2, B3"))
}

fn fan_realization() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut cases = 0;
    let mut all = fixtures::small();
    all.push(("D4", fixtures::d4()));
    for (name, b) in all {
        let u = universal_extension(&b, DEFAULT_CAP).map_err(e)?;
        let reference = associahedron_fan(&u).map_err(e)?;
        let trials = if name == "D4" { 2 } else { 5 };
        for _ in 0..trials {
            let c = random_c_hat(&mut rng, 0, u.v() - u.n());
            let a = a_polytope(&SliceSpec::new(&u, &c).map_err(e)?, None).map_err(e)?;
            let cmp = fans_equal(&outer_normal_fan(&a).map_err(e)?.fan, &reference);
            ensure(cmp.equal, format!("{name}: {}", cmp.mismatch.unwrap_or_default()))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} random c over A1, A2, A3, B2, B3, D4"))
}

/// `B_ij = s_ij·d_j` with `S` skew-symmetric is skew-symmetrized by `diag(d)`.
fn random_exchange_matrix(rng: &mut ChaCha8Rng) -> ExchangeMatrix {
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(0..=2);
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut rows = vec![vec![0i64; n]; n + m];
    for i in 0..n {
        for j in i + 1..n {
            let s = rng.gen_range(-2..=2);
            rows[i][j] = s * d[j];
            rows[j][i] = -s * d[i];
        }
    }
    for row in rows.iter_mut().skip(n) {
        for x in row.iter_mut() {
            *x = rng.gen_range(-3..=3);
        }
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    ExchangeMatrix::from_i64(&refs).expect("skew-symmetrizable by construction")
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let b = random_exchange_matrix(&mut rng);
        for k in 0..b.n() {
            let back = mutate_matrix(&mutate_matrix(&b, k).map_err(e)?, k).map_err(e)?;
            ensure(back == b, "matrix mutation is not an involution")?;
        }
    }
    let mut fixtures_all = fixtures::small();
    fixtures_all.push(("D4", fixtures::d4()));
    for (name, b) in &fixtures_all {
        let prin = principal_extension(b).map_err(e)?;
        let seed = Seed::initial(prin.clone());
        for k in 0..b.rows() {
            let back = mutate_seed(&mutate_seed(&seed, k).map_err(e)?, k).map_err(e)?;
            ensure(back == seed, format!("{name}: seed mutation is not an involution"))?;
        }
        let atlas = explore(&prin, DEFAULT_CAP).map_err(e)?;
        let (n, v) = (atlas.rank(), atlas.num_variables());
        let rel = relation_matrix(&mesh_relations(&atlas).map_err(e)?, v);
        let univ = universal_extension(b, DEFAULT_CAP).map_err(e)?;
        let dual = univ.dual_atlas();
        let dual_rel = relation_matrix(&mesh_relations(dual).map_err(e)?, dual.num_variables());
        ensure(dual_rel.mul(&univ.g_matrix()).map_err(e)?.is_zero(), format!("{name}: relations do not annihilate"))?;
        ensure(abhy_core::exact::rank(&dual_rel) == v - n, format!("{name}: relation span is not v-n"))?;
        ensure(abhy_core::exact::rank(&rel) == v - n, format!("{name}: relation span is not v-n"))?;
        for i in n..v {
            let witnesses = positive_mesh_witnesses(dual, i);
            ensure(!witnesses.is_empty(), format!("{name}: no positive mesh partner for {}", i + 1))?;
            ensure(
                witnesses.iter().all(|w| w.0 == witnesses[0].0),
                format!("{name}: partner of {} depends on the witness", i + 1),
            )?;
        }
        let grading = principal_grading(&atlas);
        for (i, x) in atlas.variables().iter().enumerate() {
            ensure(x.homogeneous_degree(&grading).is_some(), format!("{name}: x{} is not homogeneous", i + 1))?;
        }
        let c: RatVector = (0..v - n).map(|i| Rational::from_integer(((i % 3) as i64 + 1).into())).collect();
        let up = u_polytope(&SliceSpec::new(&univ, &c).map_err(e)?).map_err(e)?;
        ensure(up.vertices().len() == dual.num_clusters(), format!("{name}: vertex count differs"))?;
    }
    Ok("1000 random matrices; involution, mesh relations, witnesses, vertex counts, homogeneity on fixtures".into())
}

fn moment_sanity() -> Check {
    let u = universal_extension(&fixtures::b2(), DEFAULT_CAP).map_err(e)?;
    let k = kernel_matrix(&u).map_err(e)?;
    let (n, v) = (u.n(), u.v());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0f64;
    for _ in 0..10 {
        let c_hat = random_c_hat(&mut rng, n, v);
        let level = ReductionLevel::new(c_hat.clone(), n).map_err(e)?;
        let up = u_polytope(&SliceSpec::new(&u, level.c()).map_err(e)?).map_err(e)?;
        for w in up.vertices() {
            // u_i is fixed by the i-th equation once w is known
            let mut moduli = Vec::with_capacity(n + v);
            for i in 0..n {
                let mut ui = c_hat[i].clone();
                for j in 0..v {
                    ui -= Rational::from_integer(k.matrix()[(i, n + j)].clone()) * &w[j];
                }
                moduli.push((-ui.to_f64().unwrap()).exp());
            }
            moduli.extend(w.iter().map(|x| (2.0 * x.to_f64().unwrap()).sqrt()));
            let angles = vec![0.25; n + v];
            let mu = moment_map_eval(&MomentPoint { n, moduli, angles }).map_err(e)?;
            let kmu = abhy_core::abhy::apply_kernel_f64(&k, &mu);
            for (a, c) in kmu.iter().zip(&c_hat) {
                worst = worst.max((a - c.to_f64().unwrap()).abs());
            }
        }
    }
    ensure(worst < 1e-9, format!("max deviation {worst:e}"))?;
    Ok(format!("max |K·μ(p) - ĉ| = {worst:.1e}"))
}

type Criterion = (&'static str, Duration, fn() -> Check);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 golden fixtures", Duration::from_secs(1), golden_fixtures),
        ("2 kernel matrix", Duration::from_secs(1), kernel_criterion),
        ("3 slice equations", Duration::from_secs(1), slice_strings),
        ("4 main theorem", Duration::from_secs(30), main_theorem),
        ("5 newton polytopes", Duration::from_secs(60), newton_property),
        ("6 fan realization", Duration::from_secs(60), fan_realization),
        ("7 property suites", Duration::from_secs(60), property_suites),
        ("8 moment-map sanity", Duration::from_secs(60), moment_sanity),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= budget => (true, d),
            Ok(d) => (false, format!("{d}; took {took:.2?}, budget {budget:?}")),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!("{} criterion {name}: {detail} ({took:.2?})", if ok { "PASS" } else { "FAIL" });
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
