//! One function per subcommand. Each returns the text to print and whether
//! every check it ran passed.

use abhy_core::abhy::{unit_associahedron, SliceSpec};
use abhy_core::cluster::{f_polynomials, g_vectors};
use abhy_core::{
    a_polytope, check_univ_compatibility, explore_with, kernel_matrix, minkowski_sum, moment_equations,
    mutate_matrix, newton_polytope, principal_extension, universal_extension, u_polytope, verify_theorem,
    Atlas, ExploreOrder, IntMatrix, LaurentPoly, RatVector, Rational, ReductionLevel, UniversalMatrix, VPolytope,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::doc::{to_json, MatrixDocument, PolytopeDocument};
use crate::{CliError, Format, Options, VerifyTarget};

pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, passed: true }
    }
}

/// 1-based CLI directions to 0-based library directions.
fn zero_based(word: &[usize], n: usize) -> Result<Vec<usize>, CliError> {
    word.iter()
        .map(|&k| {
            if k == 0 || k > n {
                Err(CliError::Input(format!("flag `--word`: direction {k} is not in 1..={n}")))
            } else {
                Ok(k - 1)
            }
        })
        .collect()
}

fn one_based(xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|x| x + 1).collect()
}

/// `B` after the optional `--seed-mutations`.
fn base_matrix(doc: &MatrixDocument, opts: &Options) -> Result<IntMatrix, CliError> {
    let mut b = doc.exchange_matrix()?;
    doc.square()?;
    for k in zero_based(&opts.seed_mutations, doc.n)? {
        b = mutate_matrix(&b, k)?;
    }
    Ok(b.matrix().clone())
}

fn json_only(opts: &Options) -> Result<(), CliError> {
    match opts.format {
        None | Some(Format::Json) => Ok(()),
        Some(f) => Err(CliError::Input(format!("flag `--format`: {f:?} is not available for this command"))),
    }
}

pub fn mutate(doc: &MatrixDocument, opts: &Options) -> Result<Output, CliError> {
    json_only(opts)?;
    let mut b = doc.exchange_matrix()?;
    for k in zero_based(&opts.word, doc.n)? {
        b = mutate_matrix(&b, k)?;
    }
    Ok(Output::ok(to_json(&MatrixDocument::from_matrix(b.matrix())?)?))
}

#[derive(Serialize)]
struct ClusterEntry {
    members: Vec<usize>,
    word: Vec<usize>,
}

#[derive(Serialize)]
struct AtlasDocument {
    variables: Vec<String>,
    clusters: Vec<ClusterEntry>,
}

fn atlas_document(atlas: &Atlas) -> AtlasDocument {
    AtlasDocument {
        variables: atlas.variables().iter().map(LaurentPoly::to_string).collect(),
        clusters: atlas
            .clusters()
            .iter()
            .map(|c| ClusterEntry { members: one_based(&c.members), word: one_based(&c.word) })
            .collect(),
    }
}

fn order(opts: &Options) -> ExploreOrder {
    if opts.breadth_first {
        ExploreOrder::BreadthFirst
    } else {
        ExploreOrder::DepthFirst
    }
}

pub fn explore(doc: &MatrixDocument, opts: &Options) -> Result<Output, CliError> {
    json_only(opts)?;
    let mut b = doc.exchange_matrix()?;
    for k in zero_based(&opts.seed_mutations, doc.n)? {
        b = mutate_matrix(&b, k)?;
    }
    let atlas = explore_with(&b, opts.cap, order(opts))?;
    Ok(Output::ok(to_json(&atlas_document(&atlas))?))
}

fn principal_atlas(doc: &MatrixDocument, opts: &Options) -> Result<Atlas, CliError> {
    let b = base_matrix(doc, opts)?;
    Ok(explore_with(&principal_extension(&b)?, opts.cap, order(opts))?)
}

#[derive(Serialize)]
struct GEntry {
    index: usize,
    #[serde(rename = "gVector")]
    g_vector: Vec<i64>,
}

pub fn gvectors(doc: &MatrixDocument, opts: &Options) -> Result<Output, CliError> {
    json_only(opts)?;
    let atlas = principal_atlas(doc, opts)?;
    let entries: Vec<GEntry> = g_vectors(&atlas)?
        .into_iter()
        .enumerate()
        .map(|(i, g)| GEntry { index: i + 1, g_vector: g.0 })
        .collect();
    Ok(Output::ok(to_json(&entries)?))
}

#[derive(Serialize)]
struct FEntry {
    index: usize,
    polynomial: String,
}

pub fn fpolys(doc: &MatrixDocument, opts: &Options) -> Result<Output, CliError> {
    json_only(opts)?;
    let atlas = principal_atlas(doc, opts)?;
    let entries: Vec<FEntry> = f_polynomials(&atlas)?
        .iter()
        .enumerate()
        .map(|(i, f)| FEntry { index: i + 1, polynomial: f.to_string() })
        .collect();
    Ok(Output::ok(to_json(&entries)?))
}

fn universal(doc: &MatrixDocument, opts: &Options) -> Result<UniversalMatrix, CliError> {
    Ok(universal_extension(&base_matrix(doc, opts)?, opts.cap)?)
}

pub fn univ(doc: &MatrixDocument, opts: &Options) -> Result<Output, CliError> {
    json_only(opts)?;
    let u = universal(doc, opts)?;
    Ok(Output::ok(to_json(&MatrixDocument::from_matrix(u.full().matrix())?)?))
}

fn level(u: &UniversalMatrix, opts: &Options) -> Result<ReductionLevel, CliError> {
    match &opts.chat {
        None => Ok(ReductionLevel::default_for(u.n(), u.v())),
        Some(c) if c.len() != u.v() => {
            Err(CliError::Input(format!("flag `--chat`: expected {} entries, got {}", u.v(), c.len())))
        }
        Some(c) => Ok(ReductionLevel::new(c.clone(), u.n())?),
    }
}

fn c_values(u: &UniversalMatrix, opts: &Options) -> Result<RatVector, CliError> {
    let want = u.v() - u.n();
    match &opts.c {
        None => Ok(vec![Rational::from_integer(1.into()); want]),
        Some(c) if c.len() != want => {
            Err(CliError::Input(format!("flag `--c`: expected {want} entries, got {}", c.len())))
        }
        Some(c) => Ok(c.clone()),
    }
}

#[derive(Serialize)]
struct KernelDocument {
    rows: Vec<Vec<i64>>,
    equations: Vec<String>,
    level: Vec<String>,
}

pub fn kernel(doc: &MatrixDocument, opts: &Options) -> Result<Output, CliError> {
    json_only(opts)?;
    let u = universal(doc, opts)?;
    let k = kernel_matrix(&u)?;
    let equations = moment_equations(&k, &level(&u, opts)?)?;
    let out = KernelDocument {
        rows: k.matrix().to_i64_rows(),
        equations: equations.iter().map(|e| e.symbolic()).collect(),
        level: equations.iter().map(|e| e.rhs.to_string()).collect(),
    };
    Ok(Output::ok(to_json(&out)?))
}

#[derive(Serialize)]
struct SliceDocument {
    c: Vec<String>,
    equations: Vec<String>,
}

pub fn slice(doc: &MatrixDocument, opts: &Options) -> Result<Output, CliError> {
    json_only(opts)?;
    let u = universal(doc, opts)?;
    let spec = SliceSpec::new(&u, &c_values(&u, opts)?)?;
    let out = SliceDocument {
        c: spec.c().iter().map(ToString::to_string).collect(),
        equations: spec.equations().iter().map(|e| e.symbolic()).collect(),
    };
    Ok(Output::ok(to_json(&out)?))
}

/// 1-based index of the first cluster whose variables all vanish at `w`.
fn vertex_label(atlas: &Atlas, w: &[Rational]) -> Option<usize> {
    atlas.clusters().iter().position(|c| c.members.iter().all(|&k| w[k].is_zero())).map(|i| i + 1)
}

fn emit_polytope(doc: &PolytopeDocument, opts: &Options) -> Result<String, CliError> {
    match opts.format {
        Some(Format::Off) => doc.to_off(opts.precision),
        Some(Format::Text) => Err(CliError::Input("flag `--format`: Text is not available for this command".into())),
        _ => to_json(doc),
    }
}

pub fn polytope(doc: &MatrixDocument, opts: &Options) -> Result<Output, CliError> {
    let u = universal(doc, opts)?;
    let spec = SliceSpec::new(&u, &c_values(&u, opts)?)?;
    let up = u_polytope(&spec)?;
    let labels: Option<Vec<usize>> = up.vertices().iter().map(|w| vertex_label(u.dual_atlas(), w)).collect();
    let out = if opts.project {
        let a = a_polytope(&spec, None)?;
        // a vertex of A_c inherits the label of the vertex of U_c above it
        let labels = labels.and_then(|l| {
            a.vertices()
                .iter()
                .map(|p| up.vertices().iter().position(|w| w[..u.n()] == p[..]).map(|j| l[j]))
                .collect()
        });
        PolytopeDocument::from_polytope(&a, labels)
    } else {
        PolytopeDocument::from_polytope(&up, labels)
    };
    Ok(Output::ok(emit_polytope(&out, opts)?))
}

pub fn newton(doc: &MatrixDocument, opts: &Options, index: usize) -> Result<Output, CliError> {
    let atlas = principal_atlas(doc, opts)?;
    if index == 0 || index > atlas.num_variables() {
        return Err(CliError::Input(format!(
            "flag `--index`: {index} is not in 1..={}",
            atlas.num_variables()
        )));
    }
    let f = abhy_core::f_polynomial(&atlas, index - 1)?;
    let p = newton_polytope(&f)?;
    Ok(Output::ok(emit_polytope(&PolytopeDocument::from_polytope(&p, None), opts)?))
}

#[derive(Serialize)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn report(checks: Vec<Check>, opts: &Options) -> Result<Output, CliError> {
    let passed = checks.iter().all(|c| c.passed);
    let text = match opts.format {
        Some(Format::Json) => to_json(&checks)?,
        Some(Format::Off) => return Err(CliError::Input("flag `--format`: Off is not available for verify".into())),
        _ => {
            let mut s = String::new();
            for c in &checks {
                s.push_str(&format!("{}: {}\n", c.name, c.detail));
            }
            s
        }
    };
    Ok(Output { text, passed })
}

/// A random level: integers in `-5..=5` on the free coordinates, positive
/// fractions `p/q` with `p ∈ 1..=9`, `q ∈ 1..=4` elsewhere.
pub fn random_level(rng: &mut impl Rng, n: usize, v: usize) -> RatVector {
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

fn theorem_check(name: String, b: &IntMatrix, c_hat: &[Rational], cap: usize) -> Result<Vec<Check>, CliError> {
    let r = verify_theorem(b, c_hat, cap)?;
    let count = r.u_polytope.vertices().len();
    let vertices = if r.vertices_match {
        format!("vertices match: {count}")
    } else {
        format!(
            "vertices differ: moment image has {}, U_c has {count}",
            r.moment_image.vertices().len()
        )
    };
    let fan = if r.fan_match { "fan match: yes".to_string() } else { format!("fan differs: {}", r.fan_mismatch.unwrap_or_default()) };
    Ok(vec![
        Check { name: name.clone(), passed: r.vertices_match, detail: vertices },
        Check { name: name.clone(), passed: r.fan_match, detail: fan },
        Check {
            name,
            passed: r.projection_injective,
            detail: format!("projection injective: {}", if r.projection_injective { "yes" } else { "no" }),
        },
    ])
}

pub fn verify(doc: &MatrixDocument, opts: &Options, target: VerifyTarget, random: Option<usize>) -> Result<Output, CliError> {
    let b = base_matrix(doc, opts)?;
    let checks = match target {
        VerifyTarget::Theorem => match random {
            None => {
                let u = universal_extension(&b, opts.cap)?;
                let lv = level(&u, opts)?;
                theorem_check("theorem".into(), &b, lv.values(), opts.cap)?
            }
            Some(count) => {
                let u = universal_extension(&b, opts.cap)?;
                let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
                let mut checks = Vec::new();
                for case in 1..=count {
                    let c_hat = random_level(&mut rng, u.n(), u.v());
                    checks.extend(theorem_check(format!("case {case}"), &b, &c_hat, opts.cap)?);
                }
                checks
            }
        },
        VerifyTarget::Univ => {
            let n = b.rows();
            let words: Vec<Vec<usize>> =
                if opts.word.is_empty() { (0..n).map(|k| vec![k]).collect() } else { vec![zero_based(&opts.word, n)?] };
            let mut checks = Vec::new();
            for w in words {
                let r = check_univ_compatibility(&b, &w, opts.cap)?;
                let label = one_based(&w).iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                checks.push(Check {
                    name: format!("word {label}"),
                    passed: r.agree,
                    detail: if r.agree { "rows agree".into() } else { "rows differ".into() },
                });
            }
            checks
        }
        VerifyTarget::Newton => newton_checks(&b, opts)?,
        VerifyTarget::Fan => {
            let u = universal_extension(&b, opts.cap)?;
            let c = c_values(&u, opts)?;
            let mut c_hat = vec![Rational::zero(); u.n()];
            c_hat.extend(c);
            theorem_check("fan".into(), &b, &c_hat, opts.cap)?.into_iter().skip(1).take(1).collect()
        }
    };
    report(checks, opts)
}

fn newton_checks(b: &IntMatrix, opts: &Options) -> Result<Vec<Check>, CliError> {
    let u = universal_extension(b, opts.cap)?;
    let atlas = explore_with(&principal_extension(b)?, opts.cap, order(opts))?;
    let fs = f_polynomials(&atlas)?;
    let (n, v) = (u.n(), u.v());
    let mut units: Vec<VPolytope> = Vec::new();
    let mut checks = Vec::new();
    for i in n..v {
        let a = unit_associahedron(&u, i)?;
        let ok = newton_polytope(&fs[i])? == a;
        checks.push(Check {
            name: format!("F{}", i + 1),
            passed: ok,
            detail: format!("newton polytope {} A_e{}", if ok { "equals" } else { "differs from" }, i + 1),
        });
        units.push(a);
    }
    for i in n..v {
        for j in i + 1..v {
            let lhs = newton_polytope(&(&fs[i] * &fs[j]))?;
            let ok = lhs == minkowski_sum(&units[i - n], &units[j - n])?;
            checks.push(Check {
                name: format!("F{}*F{}", i + 1, j + 1),
                passed: ok,
                detail: format!("minkowski sum {}", if ok { "matches" } else { "differs" }),
            });
        }
    }
    Ok(checks)
}
