//! Randomized theorem-regression corpus: deterministically generates valid
//! Hom-Lie algebras by composing known-valid constructions, runs every
//! applicable structural check on each instance, and aggregates pass/fail
//! counts. Any failure dumps the offending instance for replay.
//!
//! Naive sampling of structure constants essentially never satisfies the
//! twisted Jacobi identity together with multiplicativity, so instances are
//! built constructively: direct sums and quotients of abelian pieces with
//! mode-shaped companion maps, Heisenberg and split simple blocks,
//! semidirect products of abelian pieces, arbitrary skew brackets under the
//! zero companion map (always valid), and the named small algebras.
//!
//! Instances are independent pure values; with the `parallel` feature
//! (default) they are evaluated on a rayon pool, falling back to a
//! sequential loop otherwise. Summaries are identical either way.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::actions::HomAction;
use crate::algebra::{self, HomLieAlgebra};
use crate::capability;
use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Matrix, Subspace};
use crate::homology;
use crate::json::algebra_to_json;
use crate::tensorext;

/// How the companion maps of generated instances are shaped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaMode {
    Identity,
    Surjective,
    Nilpotent,
    Zero,
    Arbitrary,
}

impl AlphaMode {
    pub fn parse(s: &str) -> Result<AlphaMode> {
        match s {
            "identity" => Ok(AlphaMode::Identity),
            "surjective" => Ok(AlphaMode::Surjective),
            "nilpotent" => Ok(AlphaMode::Nilpotent),
            "zero" => Ok(AlphaMode::Zero),
            "arbitrary" => Ok(AlphaMode::Arbitrary),
            other => Err(Error::Parse(format!("unknown alpha mode {other:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AlphaMode::Identity => "identity",
            AlphaMode::Surjective => "surjective",
            AlphaMode::Nilpotent => "nilpotent",
            AlphaMode::Zero => "zero",
            AlphaMode::Arbitrary => "arbitrary",
        }
    }
}

/// Full description of a corpus run; the seed determines everything.
#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub count: usize,
    pub dim_min: usize,
    pub dim_max: usize,
    pub field: FieldSpec,
    pub alpha_mode: AlphaMode,
    pub seed: u64,
}

impl CorpusSpec {
    fn check(&self) -> Result<()> {
        if self.dim_min < 1 || self.dim_max > 8 || self.dim_min > self.dim_max {
            return Err(Error::Precondition(
                "corpus dimensions must satisfy 1 <= min <= max <= 8".into(),
            ));
        }
        if self.field.characteristic() == 2 {
            return Err(Error::Characteristic(
                "the corpus checks use the exterior product and need characteristic != 2".into(),
            ));
        }
        Ok(())
    }
}

fn rand_scalar(rng: &mut StdRng, field: FieldSpec) -> crate::exactlin::Scalar {
    field.from_i64(rng.gen_range(-2..=2))
}

fn random_invertible(rng: &mut StdRng, n: usize, field: FieldSpec) -> Matrix {
    // lower triangular with unit-like diagonal: invertible by construction
    Matrix::from_fn(n, n, field, |i, j| {
        if i == j {
            field.from_i64(if rng.gen_bool(0.5) { 1 } else { -1 })
        } else if i > j && rng.gen_bool(0.4) {
            rand_scalar(rng, field)
        } else {
            field.zero()
        }
    })
}

fn random_nilpotent(rng: &mut StdRng, n: usize, field: FieldSpec) -> Matrix {
    Matrix::from_fn(n, n, field, |i, j| {
        if i > j && rng.gen_bool(0.5) {
            rand_scalar(rng, field)
        } else {
            field.zero()
        }
    })
}

/// Arbitrary skew bracket under the zero companion map: the twisted Jacobi
/// identity and multiplicativity hold for free.
fn random_zero_alpha(rng: &mut StdRng, n: usize, field: FieldSpec) -> HomLieAlgebra {
    let mut l = algebra::abelian(n, Matrix::zeros(n, n, field)).expect("square");
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.55) {
                let v = (0..n).map(|_| rand_scalar(rng, field)).collect();
                l.set_bracket(i, j, v);
            }
        }
    }
    l
}

/// Solvable semidirect block: one scaling generator acting on an abelian
/// space by a random operator, companion map `c * id` on the abelian part.
fn scaled_semidirect(rng: &mut StdRng, d: usize, field: FieldSpec, scaling: i64) -> HomLieAlgebra {
    let m_dim = d - 1;
    let m = algebra::abelian(m_dim, Matrix::identity(m_dim, field).scale(&field.from_i64(scaling)))
        .expect("square");
    let l = algebra::abelian_identity(1, field);
    let coeffs = vec![(0..m_dim)
        .map(|_| (0..m_dim).map(|_| rand_scalar(rng, field)).collect())
        .collect()];
    let action = HomAction::new(1, m_dim, field, coeffs).expect("shape");
    match crate::actions::semidirect(&m, &l, &action) {
        Ok(sd) => sd.algebra,
        // a scaling that breaks axiom (c) falls back to the direct sum
        Err(_) => m.direct_sum(&l).expect("same field"),
    }
}

fn random_part(rng: &mut StdRng, d: usize, field: FieldSpec, mode: AlphaMode) -> HomLieAlgebra {
    match mode {
        AlphaMode::Identity => match (d, rng.gen_range(0..4)) {
            (3, 0) => algebra::heisenberg(1, field).expect("m >= 1"),
            (3, 1) if field.characteristic() != 2 => algebra::sl2(field).expect("char"),
            (5, 0) => algebra::heisenberg(2, field).expect("m >= 1"),
            (_, 2) if d >= 2 => scaled_semidirect(rng, d, field, 1),
            _ => algebra::abelian_identity(d, field),
        },
        AlphaMode::Surjective => match (d, rng.gen_range(0..4)) {
            (3, 0) => algebra::heisenberg(1, field).expect("m >= 1"),
            (3, 1) if field.characteristic() != 2 => algebra::sl2(field).expect("char"),
            (_, 2) if d >= 2 => scaled_semidirect(rng, d, field, 1),
            _ => algebra::abelian(d, random_invertible(rng, d, field)).expect("square"),
        },
        AlphaMode::Zero => {
            if d == 1 {
                algebra::abelian(1, Matrix::zeros(1, 1, field)).expect("square")
            } else {
                random_zero_alpha(rng, d, field)
            }
        }
        AlphaMode::Nilpotent => {
            if d >= 2 && rng.gen_bool(0.5) {
                random_zero_alpha(rng, d, field)
            } else {
                algebra::abelian(d, random_nilpotent(rng, d, field)).expect("square")
            }
        }
        AlphaMode::Arbitrary => {
            if d == 1 {
                // one-dimensional pieces keep an invertible companion map;
                // the degenerate line is provably not capable and the
                // covering theorems implicitly exclude it
                return algebra::abelian(
                    1,
                    Matrix::identity(1, field).scale(&field.from_i64(if rng.gen_bool(0.5) { 1 } else { 2 })),
                )
                .expect("square");
            }
            match (d, rng.gen_range(0..6)) {
                (3, 0) => algebra::twisted_heisenberg(field),
                (4, 0) => algebra::twisted_heisenberg_cover(field),
                (_, 1) => random_part(rng, d, field, AlphaMode::Zero),
                (_, 2) => random_part(rng, d, field, AlphaMode::Nilpotent),
                (_, 3) => random_part(rng, d, field, AlphaMode::Surjective),
                _ => random_part(rng, d, field, AlphaMode::Identity),
            }
        }
    }
}

/// One corpus instance of the requested total dimension: a direct sum of
/// mode-shaped parts, occasionally quotiented by a central invariant
/// subspace.
fn random_instance(rng: &mut StdRng, dim: usize, field: FieldSpec, mode: AlphaMode) -> HomLieAlgebra {
    let mut remaining = dim;
    let mut acc: Option<HomLieAlgebra> = None;
    while remaining > 0 {
        let d = rng.gen_range(1..=remaining);
        let part = random_part(rng, d, field, mode);
        remaining -= part.dim();
        acc = Some(match acc {
            Some(a) => a.direct_sum(&part).expect("same field"),
            None => part,
        });
    }
    let mut l = acc.expect("dim >= 1");
    if mode == AlphaMode::Arbitrary && l.dim() > 2 && rng.gen_bool(0.25) {
        // quotient by an invariant central line when one exists
        let za = l.alpha_center();
        if za.dim() > 0 {
            let line = Subspace::from_vectors(&[za.basis_vectors()[0].clone()], l.dim(), field)
                .expect("well-formed");
            let invariant = line.greatest_backward_invariant(l.alpha()).expect("square");
            if !invariant.is_zero() {
                if let Ok((q, _)) = l.quotient(&invariant) {
                    if q.dim() >= 1 {
                        l = q;
                    }
                }
            }
        }
    }
    debug_assert!(l.is_valid());
    l
}

fn mode_dim_range(mode: AlphaMode, spec: &CorpusSpec) -> (usize, usize) {
    match mode {
        // the one-dimensional algebra under a non-surjective companion map
        // is not capable, and the covering statements presume otherwise
        AlphaMode::Zero | AlphaMode::Nilpotent => (spec.dim_min.max(2), spec.dim_max.max(2)),
        _ => (spec.dim_min, spec.dim_max),
    }
}

/// Deterministically generates the instance corpus for a spec.
pub fn generate(spec: &CorpusSpec) -> Result<Vec<HomLieAlgebra>> {
    spec.check()?;
    let mut rng = StdRng::seed_from_u64(spec.seed);
    let (lo, hi) = mode_dim_range(spec.alpha_mode, spec);
    let mut out = Vec::with_capacity(spec.count);
    for _ in 0..spec.count {
        let dim = rng.gen_range(lo..=hi);
        out.push(random_instance(&mut rng, dim, spec.field, spec.alpha_mode));
    }
    Ok(out)
}

/// An extension case `M >-> K ->> K/M` for the exactness suites.
#[derive(Debug, Clone)]
pub struct ExtensionCase {
    pub k: HomLieAlgebra,
    pub m: Subspace,
    pub split: bool,
}

/// Split cases are block summands; non-split cases are central lines of
/// Heisenberg-type blocks (a bracket-preserving section would force the
/// bracket of its lifts into the complement, which is impossible there).
pub fn generate_extensions(spec: &CorpusSpec, split_count: usize, non_split_count: usize) -> Result<Vec<ExtensionCase>> {
    spec.check()?;
    let field = spec.field;
    let mut rng = StdRng::seed_from_u64(spec.seed ^ 0x5eed_00ff);
    let mut out = Vec::new();
    for _ in 0..split_count {
        let da = rng.gen_range(1..=3);
        let db = rng.gen_range(1..=3);
        let a = random_part(&mut rng, da, field, AlphaMode::Surjective);
        let b = random_part(&mut rng, db, field, AlphaMode::Arbitrary);
        let k = a.direct_sum(&b).expect("same field");
        let mut rows = Vec::new();
        for i in 0..a.dim() {
            let mut e = vec![field.zero(); k.dim()];
            e[i] = field.one();
            rows.push(e);
        }
        let m = Subspace::from_vectors(&rows, k.dim(), field)?;
        out.push(ExtensionCase { k, m, split: true });
    }
    for idx in 0..non_split_count {
        let case = idx % 3;
        let (k, m) = match case {
            0 => {
                // heisenberg block with an abelian tail, kernel = the center
                // of the block
                let tail = rng.gen_range(0..=2);
                let h = algebra::heisenberg(1, field).expect("m >= 1");
                let k = if tail > 0 {
                    h.direct_sum(&algebra::abelian(tail, random_invertible(&mut rng, tail, field)).expect("square"))
                        .expect("same field")
                } else {
                    h
                };
                let mut z = vec![field.zero(); k.dim()];
                z[2] = field.one();
                (k.clone(), Subspace::from_vectors(&[z], k.dim(), field)?)
            }
            1 => {
                let k = algebra::twisted_heisenberg_cover(field);
                let m = k.alpha_center(); // span of the last generator
                (k, m)
            }
            _ => {
                let k = algebra::heisenberg(2, field).expect("m >= 1");
                (k.clone(), k.center())
            }
        };
        out.push(ExtensionCase { k, m, split: false });
    }
    Ok(out)
}

/// One named check on one instance.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn ok(name: &'static str) -> CheckOutcome {
    CheckOutcome {
        name,
        pass: true,
        detail: String::new(),
    }
}

fn fail(name: &'static str, detail: impl Into<String>) -> CheckOutcome {
    CheckOutcome {
        name,
        pass: false,
        detail: detail.into(),
    }
}

fn check<T>(name: &'static str, r: Result<T>, judge: impl FnOnce(T) -> Option<String>) -> CheckOutcome {
    match r {
        Ok(v) => match judge(v) {
            None => ok(name),
            Some(detail) => fail(name, detail),
        },
        Err(e) => fail(name, e.to_string()),
    }
}

/// Every per-instance theorem check: axiom validity, the multiplier oracle,
/// tensor-side certificates and compatibilities, the center chain, the
/// surjective-case identities, capability criteria, and the witness
/// constructions.
pub fn instance_checks(l: &HomLieAlgebra) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let report = l.validate();
    if !report.is_valid() {
        out.push(fail("validate", report.to_string()));
        return out;
    }
    out.push(ok("validate"));

    out.push(check("multiplier_oracle", homology::multiplier(l), |_| None));

    let star = tensorext::tensor_square(l);
    let ext = tensorext::exterior_square(l);
    out.push(match (&star, &ext) {
        (Ok(s), Ok(e)) => {
            if let Err(err) = s.check_lambda_compat().and_then(|_| e.check_lambda_compat()) {
                fail("tensor_certificates", err.to_string())
            } else {
                ok("tensor_certificates")
            }
        }
        (Err(e), _) | (_, Err(e)) => fail("tensor_certificates", e.to_string()),
    });

    out.push(check("h1_abelianization", homology::homology(l, 1), |rep| {
        let expected = l.abelianization().0.dim();
        (rep.dims[1] != expected).then(|| format!("H1 = {} but the abelianization has dimension {expected}", rep.dims[1]))
    }));

    // center chain: tensor center inside exterior center inside alpha-center
    // inside center; is_capable re-verifies the first two containments
    let cap = capability::is_capable(l, true);
    match &cap {
        Ok(rep) => {
            let chain = l.center().contains(&l.alpha_center())
                && l.alpha_center().contains(&rep.exterior_center)
                && rep.exterior_center.contains(&rep.tensor_center);
            out.push(if chain {
                ok("center_chain")
            } else {
                fail("center_chain", "containment chain broken")
            });
            out.push(if rep.criteria_consistent {
                ok("capability_criteria")
            } else {
                fail("capability_criteria", "shortcut criteria disagree with the exterior-center test")
            });
            if l.alpha_is_zero() {
                out.push(if rep.capable {
                    ok("alpha_zero_capable")
                } else {
                    fail("alpha_zero_capable", "zero companion map must give a capable algebra")
                });
            }
            if !l.is_perfect() && !l.alpha_surjective() && l.dim() > 1 {
                out.push(if rep.capable {
                    ok("non_perfect_non_surjective_capable")
                } else {
                    fail("non_perfect_non_surjective_capable", "expected capability")
                });
            }
            let constructive = rep.capable
                && (l.alpha_center().is_zero()
                    || l.is_abelian()
                    || l.alpha_is_zero()
                    || (!l.is_perfect() && !l.alpha_surjective()));
            if constructive {
                out.push(match &rep.witness {
                    Some(_) => ok("witness_construction"),
                    None => fail("witness_construction", "constructive case produced no witness"),
                });
            }
        }
        Err(e) => out.push(fail("capability_criteria", e.to_string())),
    }

    if l.alpha_surjective() {
        out.push(check("j2_gamma_identity", (|| {
            let h2 = homology::homology(l, 2)?.dims[2];
            let star = tensorext::tensor_square(l)?;
            let j2 = star.lambda_kernel().dim();
            let (ab, _) = l.abelianization();
            let g = tensorext::gamma(ab.dim(), ab.alpha())?;
            Ok((j2, h2, g.dim))
        })(), |(j2, h2, g)| {
            (j2 != h2 + g).then(|| format!("dim J2 = {j2}, dim H2 = {h2}, dim Gamma = {g}"))
        }));
        out.push(check("quadratic_embedding", (|| {
            let s = tensorext::tensor_square(l)?;
            tensorext::quadratic_embedding(l, &s)
        })(), |_| None));
        out.push(check("tensor_center_formula", (|| {
            let zt = capability::tensor_center(l)?;
            let zw = capability::exterior_center(l)?;
            let meet = zw.intersect(&l.derived())?;
            Ok((zt, meet, l.derived()))
        })(), |(zt, meet, derived)| {
            if zt != meet {
                Some("tensor center differs from exterior center meet derived".into())
            } else if !derived.contains(&zt) {
                Some("tensor center escapes the derived subalgebra".into())
            } else {
                None
            }
        }));
    }
    out
}

/// Direct-sum checks on a pair of surjective-companion instances.
pub fn pair_checks(l1: &HomLieAlgebra, l2: &HomLieAlgebra) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    out.push(check("pair_h2_j2_formulas", homology::direct_sum_formulas(l1, l2), |rep| {
        if !rep.h2_identity {
            Some(format!(
                "H2({}) != {} + {} + {}*{}",
                rep.h2_sum, rep.h2_left, rep.h2_right, rep.ab_left, rep.ab_right
            ))
        } else if !rep.j2_identity {
            Some("tensor-square kernel formula failed".into())
        } else {
            None
        }
    }));
    out.push(check("pair_gamma_additivity", (|| {
        let (ab1, _) = l1.abelianization();
        let (ab2, _) = l2.abelianization();
        let sum = l1.direct_sum(l2)?;
        let (ab12, _) = sum.abelianization();
        let g1 = tensorext::gamma(ab1.dim(), ab1.alpha())?.dim;
        let g2 = tensorext::gamma(ab2.dim(), ab2.alpha())?.dim;
        let g12 = tensorext::gamma(ab12.dim(), ab12.alpha())?.dim;
        Ok((g12, g1, g2, ab1.dim() * ab2.dim()))
    })(), |(g12, g1, g2, cross)| {
        (g12 != g1 + g2 + cross).then(|| format!("Gamma sum {g12} != {g1} + {g2} + {cross}"))
    }));
    // one-dimensional summands carry a full exterior center that the sum
    // can kill, so the regular splitting is only required away from them
    let degenerate_line = l1.dim() == 1 || l2.dim() == 1;
    out.push(check("pair_exterior_center_sum", capability::direct_sum_capability(l1, l2), |rep| {
        if !rep.containment {
            Some("exterior center of the sum escapes the blockwise sum".into())
        } else if !degenerate_line && rep.regular_equality == Some(false) {
            Some("regular sum should split the exterior center exactly".into())
        } else {
            None
        }
    }));
    out
}

/// Exactness checks on one extension case.
pub fn extension_checks(case: &ExtensionCase) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    out.push(check(
        "ext_sequence_exactness",
        tensorext::extension_sequence_check(&case.k, &case.m, case.split),
        |rep| {
            if !rep.middle_exact {
                Some("middle exactness failed".into())
            } else if !rep.quotient_map_surjective {
                Some("quotient map of exterior squares is not surjective".into())
            } else if case.split && rep.split_injective != Some(true) {
                Some("split extension should embed the relative exterior product".into())
            } else {
                None
            }
        },
    ));
    out.push(check("ext_six_term", homology::six_term_check(&case.k, &case.m, case.split), |rep| {
        if !rep.exact_at.iter().all(|&b| b) {
            Some(format!("exactness pattern {:?}", rep.exact_at))
        } else if !rep.final_surjective {
            Some("tail map is not surjective".into())
        } else if case.split && (rep.split_first_injective != Some(true) || rep.split_second_surjective != Some(true)) {
            Some("split short-exactness failed".into())
        } else {
            None
        }
    }));
    out
}

/// What one instance contributed to the summary.
#[derive(Debug, Clone)]
pub struct InstanceReport {
    pub index: usize,
    pub kind: &'static str,
    pub dim: usize,
    pub checks: Vec<CheckOutcome>,
    pub dump: Option<Value>,
}

/// Aggregated corpus outcome with per-check pass/fail totals and a replay
/// dump for every failure.
#[derive(Debug)]
pub struct CorpusSummary {
    pub spec_echo: Value,
    pub instances: usize,
    pub pairs: usize,
    pub extensions: usize,
    pub totals: BTreeMap<&'static str, (usize, usize)>,
    pub failures: Vec<Value>,
}

impl CorpusSummary {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let totals: BTreeMap<&str, Value> = self
            .totals
            .iter()
            .map(|(k, (p, f))| (*k, json!({ "pass": p, "fail": f })))
            .collect();
        json!({
            "spec": self.spec_echo,
            "instances": self.instances,
            "pairs": self.pairs,
            "extensions": self.extensions,
            "checks": totals,
            "failures": self.failures,
        })
    }
}

fn spec_echo(spec: &CorpusSpec) -> Value {
    json!({
        "count": spec.count,
        "dim_min": spec.dim_min,
        "dim_max": spec.dim_max,
        "field": crate::json::field_to_json(spec.field),
        "alpha": spec.alpha_mode.name(),
        "seed": spec.seed,
    })
}

fn run_reports(spec: &CorpusSpec, sequential: bool) -> Result<Vec<InstanceReport>> {
    let instances = generate(spec)?;
    let pair_mode = matches!(
        spec.alpha_mode,
        AlphaMode::Identity | AlphaMode::Surjective | AlphaMode::Arbitrary
    );
    let pair_count = if pair_mode { spec.count / 4 } else { 0 };
    let mut pair_rng = StdRng::seed_from_u64(spec.seed ^ 0x9a17_beef);
    let mut pairs = Vec::with_capacity(pair_count);
    for _ in 0..pair_count {
        let d1 = pair_rng.gen_range(1..=3);
        let d2 = pair_rng.gen_range(1..=3);
        pairs.push((
            random_part(&mut pair_rng, d1, spec.field, AlphaMode::Surjective),
            random_part(&mut pair_rng, d2, spec.field, AlphaMode::Surjective),
        ));
    }
    let ext_count = spec.count / 4;
    let extensions = generate_extensions(spec, ext_count, ext_count)?;

    enum Job {
        Single(usize, HomLieAlgebra),
        Pair(usize, HomLieAlgebra, HomLieAlgebra),
        Ext(usize, ExtensionCase),
    }
    let mut jobs = Vec::new();
    for (i, l) in instances.into_iter().enumerate() {
        jobs.push(Job::Single(i, l));
    }
    for (i, (a, b)) in pairs.into_iter().enumerate() {
        jobs.push(Job::Pair(i, a, b));
    }
    for (i, e) in extensions.into_iter().enumerate() {
        jobs.push(Job::Ext(i, e));
    }

    let eval = |job: &Job| -> InstanceReport {
        match job {
            Job::Single(i, l) => {
                let checks = instance_checks(l);
                let dump = checks.iter().any(|c| !c.pass).then(|| algebra_to_json(l));
                InstanceReport {
                    index: *i,
                    kind: "instance",
                    dim: l.dim(),
                    checks,
                    dump,
                }
            }
            Job::Pair(i, a, b) => {
                let checks = pair_checks(a, b);
                let dump = checks.iter().any(|c| !c.pass).then(|| {
                    json!({ "left": algebra_to_json(a), "right": algebra_to_json(b) })
                });
                InstanceReport {
                    index: *i,
                    kind: "pair",
                    dim: a.dim() + b.dim(),
                    checks,
                    dump,
                }
            }
            Job::Ext(i, case) => {
                let checks = extension_checks(case);
                let dump = checks.iter().any(|c| !c.pass).then(|| {
                    json!({
                        "algebra": algebra_to_json(&case.k),
                        "kernel_basis": case.m.basis().to_json_rows(),
                        "split": case.split,
                    })
                });
                InstanceReport {
                    index: *i,
                    kind: "extension",
                    dim: case.k.dim(),
                    checks,
                    dump,
                }
            }
        }
    };

    #[cfg(feature = "parallel")]
    let reports: Vec<InstanceReport> = if sequential {
        jobs.iter().map(eval).collect()
    } else {
        use rayon::prelude::*;
        jobs.par_iter().map(eval).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let reports: Vec<InstanceReport> = {
        let _ = sequential;
        jobs.iter().map(eval).collect()
    };
    Ok(reports)
}

fn summarize(spec: &CorpusSpec, reports: Vec<InstanceReport>) -> CorpusSummary {
    let mut totals: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut counts = (0usize, 0usize, 0usize);
    for rep in &reports {
        match rep.kind {
            "instance" => counts.0 += 1,
            "pair" => counts.1 += 1,
            _ => counts.2 += 1,
        }
        for c in &rep.checks {
            let entry = totals.entry(c.name).or_insert((0, 0));
            if c.pass {
                entry.0 += 1;
            } else {
                entry.1 += 1;
                failures.push(json!({
                    "kind": rep.kind,
                    "index": rep.index,
                    "dim": rep.dim,
                    "check": c.name,
                    "detail": c.detail,
                    "dump": rep.dump,
                }));
            }
        }
    }
    CorpusSummary {
        spec_echo: spec_echo(spec),
        instances: counts.0,
        pairs: counts.1,
        extensions: counts.2,
        totals,
        failures,
    }
}

/// Runs the full corpus. Uses the rayon pool when the `parallel` feature is
/// enabled; summaries are independent of the evaluation order.
pub fn evaluate(spec: &CorpusSpec) -> Result<CorpusSummary> {
    Ok(summarize(spec, run_reports(spec, false)?))
}

/// Sequential evaluation path, always available (the benchmark baseline).
pub fn evaluate_sequential(spec: &CorpusSpec) -> Result<CorpusSummary> {
    Ok(summarize(spec, run_reports(spec, true)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rational;

    fn small_spec(mode: AlphaMode, count: usize, seed: u64) -> CorpusSpec {
        CorpusSpec {
            count,
            dim_min: 1,
            dim_max: 4,
            field: Q,
            alpha_mode: mode,
            seed,
        }
    }

    #[test]
    fn generated_instances_are_valid_and_mode_shaped() {
        for mode in [
            AlphaMode::Identity,
            AlphaMode::Surjective,
            AlphaMode::Nilpotent,
            AlphaMode::Zero,
            AlphaMode::Arbitrary,
        ] {
            let algebras = generate(&small_spec(mode, 12, 7)).unwrap();
            assert_eq!(algebras.len(), 12);
            for l in &algebras {
                assert!(l.is_valid(), "invalid instance in mode {}", mode.name());
                match mode {
                    AlphaMode::Identity => assert!(l.alpha().is_identity()),
                    AlphaMode::Surjective => assert!(l.alpha_surjective()),
                    AlphaMode::Zero => assert!(l.alpha_is_zero()),
                    AlphaMode::Nilpotent => {
                        let mut power = l.alpha().clone();
                        for _ in 1..l.dim() {
                            power = power.mul(l.alpha());
                        }
                        assert!(power.is_zero(), "alpha is not nilpotent");
                    }
                    AlphaMode::Arbitrary => {}
                }
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate(&small_spec(AlphaMode::Arbitrary, 10, 42)).unwrap();
        let b = generate(&small_spec(AlphaMode::Arbitrary, 10, 42)).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!(x.same_structure(y));
        }
        let c = generate(&small_spec(AlphaMode::Arbitrary, 10, 43)).unwrap();
        assert!(a.iter().zip(&c).any(|(x, y)| !x.same_structure(y)));
    }

    #[test]
    fn empty_corpus_gives_empty_summary() {
        let summary = evaluate(&small_spec(AlphaMode::Identity, 0, 1)).unwrap();
        assert!(summary.all_passed());
        assert_eq!(summary.instances, 0);
    }

    #[test]
    fn small_identity_corpus_passes() {
        let summary = evaluate(&small_spec(AlphaMode::Identity, 8, 1)).unwrap();
        assert!(summary.all_passed(), "failures: {:?}", summary.failures);
        assert_eq!(summary.instances, 8);
        assert!(summary.extensions > 0);
    }

    #[test]
    fn small_zero_corpus_passes_and_is_capable() {
        let summary = evaluate(&small_spec(AlphaMode::Zero, 8, 3)).unwrap();
        assert!(summary.all_passed(), "failures: {:?}", summary.failures);
        let (pass, fail) = summary.totals["alpha_zero_capable"];
        assert_eq!(fail, 0);
        assert_eq!(pass, 8);
    }

    #[test]
    fn sequential_and_parallel_summaries_agree() {
        let spec = small_spec(AlphaMode::Arbitrary, 6, 11);
        let a = evaluate(&spec).unwrap().to_json();
        let b = evaluate_sequential(&spec).unwrap().to_json();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn corpus_rejects_characteristic_two() {
        let mut spec = small_spec(AlphaMode::Identity, 2, 1);
        spec.field = FieldSpec::prime(2).unwrap();
        assert!(evaluate(&spec).is_err());
    }

    #[test]
    fn extension_cases_have_real_kernels() {
        let cases = generate_extensions(&small_spec(AlphaMode::Identity, 8, 5), 4, 4).unwrap();
        assert_eq!(cases.len(), 8);
        for case in &cases {
            assert!(case.k.is_ideal(&case.m));
        }
        assert!(cases.iter().any(|c| c.split) && cases.iter().any(|c| !c.split));
    }
}
