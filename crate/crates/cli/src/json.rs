use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};
use tpqr_core::lattice::IntMatrix;
use tpqr_core::picard::ChernCharacter;
use tpqr_core::quiver::{BasisElement, Combination};
use tpqr_core::Triple;

const MAX_SAFE: i64 = (1 << 53) - 1;

/// Integers beyond the exactly representable double range are rendered as strings.
pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) if (-MAX_SAFE..=MAX_SAFE).contains(&v) => json!(v),
        _ => Value::String(n.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| ints(m.row(i))).collect())
}

pub fn combination(c: &Combination, labels: &[BasisElement]) -> Value {
    let mut out = Map::new();
    for (idx, coeff) in c {
        let v = if coeff.denom().is_one() {
            int(coeff.numer())
        } else {
            Value::String(coeff.to_string())
        };
        out.insert(labels[*idx].label.clone(), v);
    }
    Value::Object(out)
}

pub fn chern(ch: &ChernCharacter) -> Value {
    json!({
        "rank": int(&ch.rank),
        "c1": ints(ch.c1.coeffs()),
        "ch2_doubled": int(&ch.ch2_doubled),
    })
}

pub fn triple(t: Triple) -> Value {
    json!({ "p": t.p, "q": t.q, "r": t.r })
}

pub fn strings<T: ToString>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}
