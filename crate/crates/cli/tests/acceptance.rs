//! Acceptance criteria AC-1 .. AC-11. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tpqr_core::cusp::{charge, dual_cycle, triangle_cycle, CycleSeq};
use tpqr_core::fukaya::{antisymmetrized, build_fiber_bimodule, dim_table_of, fibre_object_of};
use tpqr_core::hms::{localization_of, Direction, ExceptionalCollectionState, Move};
use tpqr_core::lattice::{cokernel_invariants, IntMatrix};
use tpqr_core::picard::{intersection, named_classes};
use tpqr_core::sheafalg::fiber_sheaf_dims;
use tpqr_core::*;

const SEED: u64 = 0x7071_7231;
const AC1_LIMIT: Duration = Duration::from_secs(5);
const AC10_LIMIT: Duration = Duration::from_secs(1);

fn grid() -> Vec<Triple> {
    GRID.iter().map(|&(p, q, r)| Triple::new(p, q, r).unwrap()).collect()
}

fn n(x: i64) -> BigInt {
    BigInt::from(x)
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn first_failure(fails: &[String]) -> String {
    fails.first().cloned().unwrap_or_default()
}

fn ac1() -> Outcome {
    let mut fails = Vec::new();
    let mut slowest = Duration::ZERO;
    for t in grid() {
        let start = Instant::now();
        let f = build_directed_algebra(t).map(|a| dim_table_of(&a));
        let s = dim_table_of(&build_sheaf_algebra(t));
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        let expected = expected_dim_table(t);
        if f.as_ref() != Ok(&expected) || s != expected {
            fails.push(format!("{t}: dimension table differs"));
        }
        if elapsed >= AC1_LIMIT {
            fails.push(format!(
                "{t}: {:.3} s >= {} s",
                elapsed.as_secs_f64(),
                AC1_LIMIT.as_secs()
            ));
        }
    }
    let detail = format!(
        "graded dims exact on {} triples, slowest {:.3} s (limit {} s) {}",
        GRID.len(),
        slowest.as_secs_f64(),
        AC1_LIMIT.as_secs(),
        first_failure(&fails)
    );
    outcome(fails.is_empty(), detail)
}

fn ac2() -> Outcome {
    let mut fails = Vec::new();
    let mut pairs = 0;
    for t in grid() {
        match check_phi_A(t) {
            Ok(r) => {
                pairs += r.pairs_checked;
                if !r.passed() {
                    fails.push(format!(
                        "{t}: {} mismatches",
                        r.mismatches.len() + r.dimension_mismatches.len() + r.non_bijective_blocks.len()
                    ));
                }
            }
            Err(e) => fails.push(format!("{t}: {e}")),
        }
    }
    outcome(
        fails.is_empty(),
        format!(
            "phi_A structure constants, {pairs} composable pairs, 0 mismatches required {}",
            first_failure(&fails)
        ),
    )
}

fn ac3() -> Outcome {
    let mut fails = Vec::new();
    for t in grid() {
        let r = match euler_crosscheck(t) {
            Ok(r) => r,
            Err(e) => {
                fails.push(format!("{t}: {e}"));
                continue;
            }
        };
        if !r.passed() {
            fails.push(format!("{t}: {} entries differ", r.mismatches.len()));
        }
        let (e1, e2) = (t.e_position(1), t.e_position(2));
        let p = t.chain_len(Chain::P);
        for m in [&r.quiver, &r.riemann_roch] {
            let mut ok = m[(e1, e1)] == n(1) && m[(e1, e2)] == n(3);
            for j in 1..=p {
                for k in 1..=p {
                    if j != k {
                        ok &= m[(t.chain_position(Chain::P, j), t.chain_position(Chain::P, k))] == n(0);
                    }
                }
                for s in 1..=3 {
                    ok &= m[(t.chain_position(Chain::P, j), t.e_position(s))] == n(1);
                }
            }
            if !ok {
                fails.push(format!("{t}: anchor values violated"));
            }
        }
    }
    outcome(
        fails.is_empty(),
        format!(
            "quiver Euler matrix = Riemann-Roch matrix entrywise, anchors hold {}",
            first_failure(&fails)
        ),
    )
}

fn ac4() -> Outcome {
    let mut fails = Vec::new();
    for t in grid() {
        match serre_vs_twist(t) {
            Ok(r) if r.passed() => {}
            Ok(r) => fails.push(format!(
                "{t}: equal={} identity={} form={}",
                r.equal, r.serre_identity, r.twist_preserves_form
            )),
            Err(e) => fails.push(format!("{t}: {e}")),
        }
    }
    outcome(
        fails.is_empty(),
        format!(
            "Serre matrix chi^-1 chi^T = twist by K exactly {}",
            first_failure(&fails)
        ),
    )
}

fn ac5() -> Outcome {
    let mut fails = Vec::new();
    for t in grid() {
        let c = named_classes(t);
        let sq = |name: &str| intersection(&c[name], &c[name]).unwrap();
        let mut ok = sq("H~") == n(-2);
        for (name, class) in &c {
            let s = intersection(class, class).unwrap();
            if name.starts_with("E~(") {
                ok &= s == n(-2);
            } else if name.starts_with("E(") {
                ok &= s == n(-1);
            }
        }
        ok &= sq("D1") == n(1 - t.p as i64) && sq("D2") == n(1 - t.q as i64) && sq("D3") == n(1 - t.r as i64);
        ok &= c["D"].try_add(&c["K"]).map(|z| z.is_zero()).unwrap_or(false);
        ok &= sq("D") == n(9 - (t.p + t.q + t.r) as i64);
        if !ok {
            fails.push(format!("{t}"));
        }
    }
    outcome(
        fails.is_empty(),
        format!(
            "self-intersections H~, E~, E, D_i, D = -K, D^2 = 9-(p+q+r) {}",
            first_failure(&fails)
        ),
    )
}

fn ac6() -> Outcome {
    let fibre = fiber_sheaf_dims();
    let mut fails = Vec::new();
    let mut pairs = 0;
    for t in grid() {
        let b = match build_fiber_bimodule(t) {
            Ok(b) => b,
            Err(e) => {
                fails.push(format!("{t}: {e}"));
                continue;
            }
        };
        if !b.dimension_rule_violations().is_empty() {
            fails.push(format!("{t}: bimodule dimension rule violated"));
        }
        let slots = t.slots();
        for (i, &si) in slots.iter().enumerate() {
            for (j, &sj) in slots.iter().enumerate() {
                pairs += 1;
                let expected = fibre
                    .get(&(fibre_object_of(si), fibre_object_of(sj)))
                    .cloned()
                    .unwrap_or_default();
                if b.graded_dim(i, j) != expected {
                    fails.push(format!("{t}: pair ({i},{j})"));
                }
            }
        }
        let xb = antisymmetrized(&b.base.algebra.euler_matrix());
        let chains = (t.p + t.q + t.r) as usize;
        let (e1, e3) = (t.e_position(1), t.e_position(3));
        let mut ok = xb[(e1, e3)] == n(6);
        for i in 0..chains {
            for k in 1..=3 {
                ok &= xb[(i, t.e_position(k))] == n(1);
            }
            for j in 0..chains {
                ok &= xb[(i, j)] == n(0);
            }
        }
        if !ok {
            fails.push(format!("{t}: intersection table"));
        }
    }
    outcome(
        fails.is_empty(),
        format!(
            "bimodule dims = fibre sheaf dims on {pairs} object pairs, chi_B table exact {}",
            first_failure(&fails)
        ),
    )
}

fn ac7() -> Outcome {
    let mut fails = Vec::new();
    for t in grid() {
        match check_restriction_square(t) {
            Ok(r) if r.passed() => {}
            Ok(r) => fails.push(format!(
                "{t}: {} object, {} morphism, {} functor failures, collapse {}",
                r.object_failures.len(),
                r.morphism_failures.len(),
                r.functor_failures.len(),
                r.collapse_ok
            )),
            Err(e) => fails.push(format!("{t}: {e}")),
        }
    }
    outcome(
        fails.is_empty(),
        format!(
            "phi_B . c_Fuk = c_vect . phi_A on objects and every basis element {}",
            first_failure(&fails)
        ),
    )
}

fn random_unitriangular(rng: &mut ChaCha8Rng, size: usize) -> IntMatrix {
    IntMatrix::from_fn(size, size, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => n(1),
        std::cmp::Ordering::Less => n(rng.gen_range(-4..=4)),
        std::cmp::Ordering::Greater => n(0),
    })
}

fn state(chi: IntMatrix) -> ExceptionalCollectionState {
    let labels = (1..=chi.rows()).map(|i| format!("X{i}")).collect();
    ExceptionalCollectionState::from_euler(chi, labels).unwrap()
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut fails = Vec::new();
    let cases = 200;
    for case in 0..cases {
        let size = rng.gen_range(3..=6);
        let s = state(random_unitriangular(&mut rng, size));
        let i = rng.gen_range(1..size - 1);
        for dir in [Direction::Left, Direction::Right] {
            let m = |k| Move {
                slot: k,
                direction: dir,
            };
            let a = s.apply_word(&[m(i), m(i + 1), m(i)]).unwrap();
            let b = s.apply_word(&[m(i + 1), m(i), m(i + 1)]).unwrap();
            if a.classes() != b.classes() {
                fails.push(format!("case {case}: braid relation at {i} ({dir:?})"));
            }
        }
        let slot = rng.gen_range(1..size);
        for (x, y) in [
            (Move::left(slot), Move::right(slot)),
            (Move::right(slot), Move::left(slot)),
        ] {
            let back = s.apply_word(&[x, y]).unwrap();
            if back.classes() != s.classes() {
                fails.push(format!("case {case}: inverse at {slot}"));
            }
            if !s.apply(x).unwrap().is_exceptional() {
                fails.push(format!("case {case}: unitriangularity lost"));
            }
        }
    }
    let p2 = state(IntMatrix::from_rows(&[vec![1, 3, 6], vec![0, 1, 3], vec![0, 0, 1]]));
    let m = p2.mutate(2, Direction::Left).unwrap();
    if m.classes()[1] != vec![n(0), n(-3), n(1)] {
        fails.push("P^2 instance".into());
    }
    let t = Triple::new(3, 3, 3).unwrap();
    let geo = ExceptionalCollectionState::for_triple(t);
    let slot = t.e_position(2) + 1;
    let g = geo.mutate(slot, Direction::Left).unwrap();
    let expected: Vec<BigInt> = (0..t.num_objects())
        .map(|k| {
            if k == t.e_position(3) {
                n(1)
            } else if k == t.e_position(2) {
                n(-3)
            } else {
                n(0)
            }
        })
        .collect();
    if g.classes()[slot - 1] != expected {
        fails.push("(3,3,3) instance [E3] - 3[E2]".into());
    }
    outcome(
        fails.is_empty(),
        format!(
            "braid and inverse laws on {cases} seeded random collections, [E3]-3[E2] instance {}",
            first_failure(&fails)
        ),
    )
}

fn random_unimodular(rng: &mut ChaCha8Rng, size: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(size);
    for _ in 0..rng.gen_range(0..=12) {
        let (i, j) = (rng.gen_range(0..size), rng.gen_range(0..size));
        if i != j {
            let k = n(rng.gen_range(-3..=3));
            let e = IntMatrix::from_fn(size, size, |a, b| {
                if a == b {
                    n(1)
                } else if (a, b) == (i, j) {
                    k.clone()
                } else {
                    n(0)
                }
            });
            u = &u * &e;
        }
    }
    u
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut fails = Vec::new();
    let trials = 10;
    for t in grid() {
        let base = match (k0_localization(t), k0_localization_twist(t)) {
            (Ok(a), Ok(b)) => {
                if (a.free_rank, &a.torsion) != (b.free_rank, &b.torsion) {
                    fails.push(format!("{t}: pipelines disagree"));
                }
                (a.free_rank, a.torsion)
            }
            _ => {
                fails.push(format!("{t}: localization failed"));
                continue;
            }
        };
        let start = ExceptionalCollectionState::for_triple(t);
        let size = start.len();
        let s = coxeter_matrix(&start.euler_matrix()).unwrap();
        for _ in 0..trials {
            let word: Vec<Move> = (0..rng.gen_range(1..=5))
                .map(|_| {
                    let slot = rng.gen_range(1..size);
                    if rng.gen_bool(0.5) {
                        Move::left(slot)
                    } else {
                        Move::right(slot)
                    }
                })
                .collect();
            let mutated = start.apply_word(&word).unwrap();
            let l = localization_of(&coxeter_matrix(&mutated.euler_matrix()).unwrap());
            if (l.free_rank, l.torsion) != base {
                fails.push(format!("{t}: mutation word changed the cokernel"));
            }
            let u = random_unimodular(&mut rng, size);
            let conj = &(&u.inverse().unwrap() * &s) * &u;
            if cokernel_invariants(&IntMatrix::identity(size).sub(&conj)) != base {
                fails.push(format!("{t}: conjugation changed the cokernel"));
            }
        }
    }
    outcome(
        fails.is_empty(),
        format!(
            "coker(I - S) stable under {trials} mutation words and conjugations per triple, pipelines agree {}",
            first_failure(&fails)
        ),
    )
}

fn ac10() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    let mut fails = Vec::new();
    let cases = 1000;
    let mut done = 0;
    while done < cases {
        let len = rng.gen_range(1..=12);
        let v: Vec<i64> = (0..len).map(|_| rng.gen_range(2..=9)).collect();
        if v.iter().all(|&b| b == 2) {
            continue;
        }
        done += 1;
        let c = CycleSeq::new(&v).unwrap();
        let d = dual_cycle(&c).unwrap();
        if dual_cycle(&d).unwrap() != c {
            fails.push(format!("involution fails on {c}"));
        }
        let excess: i64 = v.iter().map(|b| b - 3).sum();
        if d.len() as i64 - c.len() as i64 != excess {
            fails.push(format!("length identity fails on {c}"));
        }
    }
    let hand = CycleSeq::new(&[3i64, 2, 2]).unwrap();
    let five = CycleSeq::new(&[5i64]).unwrap();
    if dual_cycle(&hand).ok() != Some(five.clone()) || charge(&hand) != 1 || charge(&five) != 3 {
        fails.push("(3,2,2) -> (5)".into());
    }
    if triangle_cycle(Triple::new(4, 3, 3).unwrap()).ok() != Some(hand) {
        fails.push("triangle (4,3,3)".into());
    }
    let elapsed = start.elapsed();
    if elapsed >= AC10_LIMIT {
        fails.push(format!("{:.3} s >= 1 s", elapsed.as_secs_f64()));
    }
    outcome(
        fails.is_empty(),
        format!(
            "involution and length identity on {cases} seeded cycles, (3,2,2) -> (5), {:.3} s (limit 1 s) {}",
            elapsed.as_secs_f64(),
            first_failure(&fails)
        ),
    )
}

fn run_cli(args: &[String]) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_tpqr"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code())
}

fn ac11() -> Outcome {
    let mut fails = Vec::new();
    let mut runs = 0;
    let mut invocations: Vec<Vec<String>> = Vec::new();
    for t in grid() {
        let tri = |cmd: &str| -> Vec<String> {
            vec![
                cmd.into(),
                "--p".into(),
                t.p.to_string(),
                "--q".into(),
                t.q.to_string(),
                "--r".into(),
                t.r.to_string(),
            ]
        };
        for side in ["fukaya", "sheaf"] {
            let mut a = tri("build");
            a.extend(["--side".into(), side.into()]);
            invocations.push(a);
        }
        invocations.push(tri("check"));
        let mut m = tri("mutate");
        m.extend(["--word".into(), "2,-1,1".into()]);
        invocations.push(m);
        invocations.push(tri("k0"));
        invocations.push(tri("triangle"));
        invocations.push(tri("classes"));
    }
    for cycle in ["3,2,2", "5", "2,2,2", "4,2,3,2,2"] {
        invocations.push(vec!["dual".into(), "--cycle".into(), cycle.into()]);
    }
    for args in &invocations {
        let first = run_cli(args);
        let second = run_cli(args);
        runs += 2;
        if first != second {
            fails.push(args.join(" "));
        }
        if first.1 == Some(2) || first.0.is_empty() {
            fails.push(format!("{}: no report", args.join(" ")));
        }
    }
    outcome(
        fails.is_empty(),
        format!(
            "{runs} CLI runs, every command byte-identical across two runs {}",
            first_failure(&fails)
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("AC-1", ac1),
        ("AC-2", ac2),
        ("AC-3", ac3),
        ("AC-4", ac4),
        ("AC-5", ac5),
        ("AC-6", ac6),
        ("AC-7", ac7),
        ("AC-8", ac8),
        ("AC-9", ac9),
        ("AC-10", ac10),
        ("AC-11", ac11),
    ];
    let mut all = true;
    for (name, f) in criteria {
        let o = f();
        all &= o.passed;
        println!(
            "{name} {} {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail.trim_end()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
