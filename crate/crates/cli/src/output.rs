//! JSON renderings of solver results. Keys come out sorted because
//! `serde_json::Map` is ordered.

use serde_json::{json, Value};
use tailgame::construct::{AlternationCertificate, ShiftConstruction, ShiftTerm};
use tailgame::{EquilibriumReport, MixedProfile, Rational, RlexDecision, SolveOutcome};

use crate::document::{rational_json, rationals_json, truncated_json};

fn profile_fields(p: &MixedProfile<Rational>) -> (Value, Value) {
    (rationals_json(&p.x), rationals_json(&p.y))
}

pub fn equilibrium_json(e: &EquilibriumReport<Rational>) -> Value {
    let (x, y) = profile_fields(&e.profile);
    json!({
        "x": x,
        "y": y,
        "support_x": e.supports.0,
        "support_y": e.supports.1,
        "payoff_1": rational_json(&e.payoffs.0),
        "payoff_2": rational_json(&e.payoffs.1),
        "pure": e.pure,
    })
}

pub fn vector_equilibrium_json(e: &EquilibriumReport<Rational, Vec<Rational>>) -> Value {
    let (x, y) = profile_fields(&e.profile);
    json!({
        "x": x,
        "y": y,
        "support_x": e.supports.0,
        "support_y": e.supports.1,
        "payoff_1": rationals_json(&e.payoffs.0),
        "payoff_2": rationals_json(&e.payoffs.1),
        "pure": e.pure,
    })
}

pub fn solve_outcome_json(method: &str, o: &SolveOutcome<Rational>, value: Option<&Rational>) -> Value {
    json!({
        "method": method,
        "degenerate": o.degenerate,
        "equilibria": o.equilibria.iter().map(equilibrium_json).collect::<Vec<_>>(),
        "value": value.map(rational_json),
    })
}

pub fn rlex_decision_json(d: &RlexDecision<Rational>) -> Value {
    let candidates: Vec<Value> = d
        .candidates
        .iter()
        .map(|(p, ok)| {
            let (x, y) = profile_fields(p);
            json!({ "x": x, "y": y, "verified": ok })
        })
        .collect();
    json!({
        "status": d.status.name(),
        "degenerate": d.degenerate,
        "payoff_constant": d.payoff_constant,
        "candidates": candidates,
        "equilibria": d.equilibria().iter().map(vector_equilibrium_json).collect::<Vec<_>>(),
    })
}

fn shift_term_json(t: &ShiftTerm) -> Value {
    json!({
        "index": t.index,
        "s": rational_json(&t.s),
        "t": rational_json(&t.t),
        "f": rational_json(&t.f),
        "c": rational_json(&t.c),
        "ratio_bound": rational_json(&t.ratio_bound),
        "alternation_bound": rational_json(&t.alternation_bound),
        "monotone_bound": rational_json(&t.monotone_bound),
        "moment_property": t.moment_property(),
        "alternation_property": t.alternation_property(),
        "monotone_property": t.monotone_property(),
    })
}

pub fn shift_json(s: &ShiftConstruction) -> Value {
    let checks: Vec<Value> = s
        .cdf_checks
        .iter()
        .map(|c| {
            json!({
                "k": c.k,
                "gap_at_t": rational_json(&c.gap_at_t),
                "gap_at_s": rational_json(&c.gap_at_s),
                "certified": c.certified(),
            })
        })
        .collect();
    json!({
        "shifted": truncated_json(&s.shifted),
        "terms": s.terms.iter().map(shift_term_json).collect::<Vec<_>>(),
        "cdf_checks": checks,
        "certified": s.certified(),
    })
}

pub fn certificate_json(c: &AlternationCertificate) -> Value {
    let entries: Vec<Value> = c
        .k_indices
        .iter()
        .zip(&c.directions)
        .zip(&c.bound_checks)
        .map(|((k, d), (lower, upper))| {
            json!({
                "k": k,
                "direction": d.as_str(),
                "winner_lower": rational_json(lower),
                "loser_upper": rational_json(upper),
            })
        })
        .collect();
    Value::Array(entries)
}
