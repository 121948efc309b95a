use serde_json::{json, Map, Value};
use tpqr_core::cusp::{charge, dual_cycle, triangle_cycle, CycleSeq};
use tpqr_core::fukaya::{dim_table_of, expected_dim_table, expected_total_dim, DimTable};
use tpqr_core::hms::{
    check_phi_A, check_restriction_square, euler_crosscheck, k0_localization, k0_localization_twist, parse_word,
    serre_vs_twist, vanishing_cycle_classes, ExceptionalCollectionState,
};
use tpqr_core::picard::{intersection, named_classes};
use tpqr_core::quiver::GradedAlgebra;
use tpqr_core::{build_directed_algebra, build_sheaf_algebra, Error, Triple};

use crate::json;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Side {
    Fukaya,
    Sheaf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Dims,
    Assoc,
    Iso,
    Euler,
    Serre,
    Square,
    All,
}

/// Why a command did not produce a passing report.
#[derive(Debug)]
pub enum Failure {
    /// Malformed input that clap could not reject itself.
    Usage(String),
    Domain(Error),
    /// A report was produced but some check failed.
    Checks(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidWord { .. } => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

pub type Outcome = Result<Value, Failure>;

fn header(schema: &str, config: Value) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(schema));
    m.insert("version".into(), json!(VERSION));
    m.insert("config".into(), config);
    m
}

fn algebra_json(alg: &GradedAlgebra) -> Value {
    let objects = alg.objects();
    let homs: Vec<Value> = alg
        .homs()
        .iter()
        .map(|(&(i, j), basis)| {
            let dims: Map<String, Value> = alg
                .graded_dim(i, j)
                .into_iter()
                .map(|(d, n)| (d.to_string(), json!(n)))
                .collect();
            json!({
                "source": objects[i],
                "target": objects[j],
                "basis": basis.iter().map(|b| json!({ "label": b.label, "degree": b.degree })).collect::<Vec<_>>(),
                "graded_dims": dims,
            })
        })
        .collect();
    let products: Vec<Value> = alg
        .products()
        .iter()
        .filter(|(&(i, j, k, a, b), _)| !(i == j && a == 0) && !(j == k && b == 0))
        .map(|(&(i, j, k, a, b), value)| {
            json!({
                "objects": [objects[i], objects[j], objects[k]],
                "left": alg.hom(i, j)[a].label,
                "right": alg.hom(j, k)[b].label,
                "value": json::combination(value, alg.hom(i, k)),
            })
        })
        .collect();
    json!({
        "objects": objects,
        "homs": homs,
        "products": products,
        "total_dim": alg.total_dim(),
    })
}

pub fn build(t: Triple, side: Side) -> Outcome {
    let alg = match side {
        Side::Fukaya => build_directed_algebra(t)?,
        Side::Sheaf => build_sheaf_algebra(t),
    };
    let side_name = match side {
        Side::Fukaya => "fukaya",
        Side::Sheaf => "sheaf",
    };
    let mut out = header("tpqr/build/v1", json!({ "triple": json::triple(t), "side": side_name }));
    out.insert("algebra".into(), algebra_json(&alg));
    Ok(Value::Object(out))
}

fn check_entry(name: &str, passed: bool, details: Value) -> Value {
    json!({ "name": name, "status": if passed { "pass" } else { "fail" }, "details": details })
}

fn table_mismatches(found: &DimTable, expected: &DimTable, objects: &[String]) -> Vec<String> {
    let keys: std::collections::BTreeSet<_> = found.keys().chain(expected.keys()).collect();
    keys.into_iter()
        .filter(|k| found.get(k) != expected.get(k))
        .map(|&(i, j)| {
            format!(
                "hom({}, {}): {:?} vs {:?}",
                objects[i],
                objects[j],
                found.get(&(i, j)),
                expected.get(&(i, j))
            )
        })
        .collect()
}

fn run_suite(t: Triple, suite: Suite) -> Result<Vec<Value>, Failure> {
    let want = |s: Suite| suite == Suite::All || suite == s;
    let mut checks = Vec::new();
    let need_algebras = want(Suite::Dims) || want(Suite::Assoc);
    let algebras = if need_algebras {
        Some((build_directed_algebra(t)?, build_sheaf_algebra(t)))
    } else {
        None
    };
    if want(Suite::Dims) {
        let (f, s) = algebras.as_ref().expect("built");
        let expected = expected_dim_table(t);
        let mf = table_mismatches(&dim_table_of(f), &expected, f.objects());
        let ms = table_mismatches(&dim_table_of(s), &expected, s.objects());
        let total = expected_total_dim(t);
        let passed = mf.is_empty() && ms.is_empty() && f.total_dim() == total && s.total_dim() == total;
        checks.push(check_entry(
            "dims",
            passed,
            json!({
                "expected_total_dim": total,
                "fukaya_total_dim": f.total_dim(),
                "sheaf_total_dim": s.total_dim(),
                "fukaya_mismatches": mf,
                "sheaf_mismatches": ms,
            }),
        ));
    }
    if want(Suite::Assoc) {
        let (f, s) = algebras.as_ref().expect("built");
        let (rf, rs) = (f.verify_associativity(), s.verify_associativity());
        checks.push(check_entry(
            "assoc",
            rf.passed() && rs.passed(),
            json!({
                "fukaya_triples_checked": rf.triples_checked,
                "fukaya_violations": rf.violations,
                "sheaf_triples_checked": rs.triples_checked,
                "sheaf_violations": rs.violations,
            }),
        ));
    }
    if want(Suite::Iso) {
        let r = check_phi_A(t)?;
        checks.push(check_entry(
            "iso",
            r.passed(),
            json!({
                "object_map": r.object_map.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
                "pairs_checked": r.pairs_checked,
                "dimension_mismatches": r.dimension_mismatches,
                "non_bijective_blocks": r.non_bijective_blocks,
                "mismatches": r.mismatches,
            }),
        ));
    }
    if want(Suite::Euler) {
        let r = euler_crosscheck(t)?;
        checks.push(check_entry(
            "euler",
            r.passed(),
            json!({
                "matrix": json::matrix(&r.quiver),
                "mismatches": r.mismatches.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
                "unitriangular": r.unitriangular,
            }),
        ));
    }
    if want(Suite::Serre) {
        let r = serre_vs_twist(t)?;
        checks.push(check_entry(
            "serre",
            r.passed(),
            json!({
                "serre_matrix": json::matrix(&r.coxeter),
                "equals_twist_by_K": r.equal,
                "serre_identity": r.serre_identity,
                "twist_preserves_form": r.twist_preserves_form,
            }),
        ));
    }
    if want(Suite::Square) {
        let r = check_restriction_square(t)?;
        checks.push(check_entry(
            "square",
            r.passed(),
            json!({
                "objects_checked": r.objects_checked,
                "object_failures": r.object_failures,
                "morphisms_checked": r.morphisms_checked,
                "morphism_failures": r.morphism_failures,
                "functor_failures": r.functor_failures,
                "collapse": r.collapse_ok,
            }),
        ));
    }
    Ok(checks)
}

pub fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Dims => "dims",
        Suite::Assoc => "assoc",
        Suite::Iso => "iso",
        Suite::Euler => "euler",
        Suite::Serre => "serre",
        Suite::Square => "square",
        Suite::All => "all",
    }
}

pub fn check(t: Triple, suite: Suite) -> Outcome {
    let checks = run_suite(t, suite)?;
    let passed = checks.iter().all(|c| c["status"] == "pass");
    let mut out = header(
        "tpqr/check/v1",
        json!({ "triple": json::triple(t), "suite": suite_name(suite) }),
    );
    out.insert("checks".into(), Value::Array(checks));
    out.insert("passed".into(), json!(passed));
    let v = Value::Object(out);
    if passed {
        Ok(v)
    } else {
        Err(Failure::Checks(v))
    }
}

pub fn mutate(t: Triple, word: &str) -> Outcome {
    let moves = parse_word(word)?;
    let state = ExceptionalCollectionState::for_triple(t).apply_word(&moves)?;
    let chern = state.chern_characters().expect("geometric state");
    let classes: Vec<Value> = state
        .labels()
        .iter()
        .zip(state.classes())
        .zip(&chern)
        .map(|((label, coords), ch)| json!({ "label": label, "coordinates": json::ints(coords), "chern_character": json::chern(ch) }))
        .collect();
    let mut out = header(
        "tpqr/mutate/v1",
        json!({ "triple": json::triple(t), "word": json::strings(&moves) }),
    );
    out.insert("classes".into(), Value::Array(classes));
    out.insert("euler_matrix".into(), json::matrix(&state.euler_matrix()));
    out.insert("exceptional".into(), json!(state.is_exceptional()));
    Ok(Value::Object(out))
}

pub fn k0(t: Triple) -> Outcome {
    let r = k0_localization(t)?;
    let tw = k0_localization_twist(t)?;
    let mut out = header("tpqr/k0/v1", json!({ "triple": json::triple(t) }));
    out.insert("free_rank".into(), json!(r.free_rank));
    out.insert("torsion".into(), json::ints(&r.torsion));
    out.insert("i_minus_s".into(), json::matrix(&r.i_minus_s));
    out.insert(
        "twist_pipeline_agrees".into(),
        json!(r.free_rank == tw.free_rank && r.torsion == tw.torsion),
    );
    Ok(Value::Object(out))
}

fn cycle_json(c: &CycleSeq) -> Value {
    let mut m = Map::new();
    m.insert("entries".into(), json!(c.entries()));
    m.insert("length".into(), json!(c.len()));
    m.insert("charge".into(), json!(charge(c)));
    if let Ok(blocks) = c.blocks() {
        m.insert(
            "blocks".into(),
            Value::Array(blocks.iter().map(|b| json!({ "k": b.k, "l": b.l })).collect()),
        );
    }
    Value::Object(m)
}

fn duality_fields(c: &CycleSeq, out: &mut Map<String, Value>) -> Result<(), Failure> {
    let d = dual_cycle(c)?;
    let excess: i64 = c.entries().iter().map(|&b| i64::from(b) - 3).sum();
    let diff = d.len() as i64 - c.len() as i64;
    out.insert("dual".into(), cycle_json(&d));
    out.insert(
        "length_identity".into(),
        json!({ "len_dual_minus_len": diff, "sum_b_minus_3": excess, "holds": diff == excess }),
    );
    out.insert("involution".into(), json!(dual_cycle(&d)? == *c));
    Ok(())
}

pub fn parse_cycle(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Usage(format!("invalid cycle entry {tok:?}")))
        })
        .collect()
}

pub fn dual(cycle: &str) -> Outcome {
    let entries = parse_cycle(cycle)?;
    let c = CycleSeq::new(&entries)?;
    let mut out = header("tpqr/dual/v1", json!({ "cycle": entries }));
    out.insert("input".into(), cycle_json(&c));
    duality_fields(&c, &mut out)?;
    Ok(Value::Object(out))
}

pub fn triangle(t: Triple) -> Outcome {
    let c = triangle_cycle(t)?;
    let mut out = header("tpqr/triangle/v1", json!({ "triple": json::triple(t) }));
    out.insert("cycle".into(), cycle_json(&c));
    out.insert("hyperbolic".into(), json!(c.is_hyperbolic()));
    if c.is_hyperbolic() {
        duality_fields(&c, &mut out)?;
    } else {
        out.insert("dual".into(), Value::Null);
    }
    Ok(Value::Object(out))
}

pub fn classes(t: Triple) -> Outcome {
    let mut named = Map::new();
    for (name, class) in named_classes(t) {
        named.insert(
            name,
            json!({ "coefficients": json::ints(class.coeffs()), "self_intersection": json::int(&intersection(&class, &class)?) }),
        );
    }
    let ledger = vanishing_cycle_classes(t)?;
    let cones: Vec<Value> = ledger
        .entries
        .iter()
        .map(|e| {
            let gauge = e
                .gauge
                .as_ref()
                .map(|g| json!({ "sign": g.sign, "point_shift": json::int(&g.point_shift) }));
            json!({
                "chain": e.chain.name(),
                "index": e.index,
                "cone": json::chern(&e.cone),
                "sheaf": e.sheaf_name,
                "sheaf_character": json::chern(&e.sheaf),
                "gauge": gauge,
                "cone_self_pairing": json::int(&e.cone_self_pairing),
                "sheaf_self_pairing": json::int(&e.sheaf_self_pairing),
            })
        })
        .collect();
    let mut out = header("tpqr/classes/v1", json!({ "triple": json::triple(t) }));
    out.insert("named_classes".into(), Value::Object(named));
    out.insert("vanishing_cycles".into(), Value::Array(cones));
    out.insert(
        "h_tilde".into(),
        json!({
            "structure_sheaf": json::chern(&ledger.h_tilde),
            "twisted_by_minus_one": json::chern(&ledger.h_tilde_twisted),
            "difference": json::chern(&ledger.h_difference),
            "difference_is_point": ledger.h_difference_is_point,
            "self_pairings": [json::int(&ledger.h_self_pairings.0), json::int(&ledger.h_self_pairings.1)],
        }),
    );
    Ok(Value::Object(out))
}

pub fn error_json(e: &Error) -> Value {
    json!({ "schema": "tpqr/error/v1", "error": { "kind": e.kind(), "message": e.to_string() } })
}
