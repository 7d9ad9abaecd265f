//! The JSON game document and the smaller input files (single
//! distributions, number sequences, truncated atom sequences).
//!
//! Numbers may be JSON numbers or strings such as `"3/7"`, `"-2"` or
//! `"0.125"`; both are read as exact rationals. Output always uses strings.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};
use tailgame::construct::TruncatedAtomSequence;
use tailgame::scalar::{format_rational, int, parse_rational};
use tailgame::{BimatrixGame, DiscreteDistribution, DistributionBimatrixGame, Matrix, Rational, VectorBimatrixGame};

#[derive(Debug, Clone, PartialEq)]
pub enum Game {
    Bimatrix(BimatrixGame<Rational>),
    Vector(VectorBimatrixGame<Rational>),
    Distribution(DistributionBimatrixGame<Rational>),
}

impl Game {
    pub fn kind(&self) -> &'static str {
        match self {
            Game::Bimatrix(_) => "bimatrix",
            Game::Vector(_) => "vector",
            Game::Distribution(_) => "distribution",
        }
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

pub fn number(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => Ok(parse_rational(&n.to_string())?),
        Value::String(s) => Ok(parse_rational(s)?),
        other => bail!("expected a number, found {other}"),
    }
}

pub fn number_list(v: &Value) -> Result<Vec<Rational>> {
    array(v)?.iter().map(number).collect()
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rationals_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

fn array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| anyhow!("expected an array, found {v}"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| anyhow!("missing field \"{key}\""))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    field(obj, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| anyhow!("field \"{key}\" must be a non-negative integer"))
}

/// A `rows × cols` array of cells, each parsed by `cell`.
fn matrix<T: Clone>(v: &Value, rows: usize, cols: usize, mut cell: impl FnMut(&Value) -> Result<T>) -> Result<Matrix<T>> {
    let outer = array(v)?;
    if outer.len() != rows {
        bail!("expected {rows} rows, found {}", outer.len());
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in outer.iter().enumerate() {
        let row = array(row)?;
        if row.len() != cols {
            bail!("row {i} has {} entries, expected {cols}", row.len());
        }
        out.push(row.iter().map(&mut cell).collect::<Result<Vec<T>>>()?);
    }
    Ok(Matrix::from_rows(out)?)
}

/// `{"atoms": [...], "masses": [...]}`, or a mass vector over `support`
/// with zero entries dropped.
pub fn distribution(v: &Value, support: Option<&[Rational]>) -> Result<DiscreteDistribution<Rational>> {
    match (v, support) {
        (Value::Object(obj), _) => {
            let atoms = number_list(field(obj, "atoms")?)?;
            let masses = number_list(field(obj, "masses")?)?;
            Ok(DiscreteDistribution::new(atoms, masses)?)
        }
        (Value::Array(_), Some(support)) => {
            let masses = number_list(v)?;
            if masses.len() != support.len() {
                bail!("mass vector has {} entries, support has {}", masses.len(), support.len());
            }
            let zero = int(0);
            let (atoms, masses): (Vec<_>, Vec<_>) =
                support.iter().cloned().zip(masses).filter(|(_, m)| *m != zero).unzip();
            Ok(DiscreteDistribution::new(atoms, masses)?)
        }
        (Value::Array(_), None) => bail!("mass-vector cells need a \"support\" field"),
        (other, _) => bail!("expected a distribution, found {other}"),
    }
}

pub fn distribution_json(d: &DiscreteDistribution<Rational>) -> Value {
    json!({ "atoms": rationals_json(d.atoms()), "masses": rationals_json(d.masses()) })
}

pub fn parse_game(v: &Value) -> Result<Game> {
    let obj = v.as_object().ok_or_else(|| anyhow!("game document must be a JSON object"))?;
    let kind = field(obj, "type")?.as_str().ok_or_else(|| anyhow!("field \"type\" must be a string"))?;
    let zero_sum = match obj.get("zero_sum") {
        None => false,
        Some(z) => z.as_bool().ok_or_else(|| anyhow!("field \"zero_sum\" must be a boolean"))?,
    };
    let rows = usize_field(obj, "rows")?;
    let cols = usize_field(obj, "cols")?;
    if rows == 0 || cols == 0 {
        bail!("rows and cols must be positive");
    }
    let b_value = || -> Result<&Value> {
        field(obj, "B").map_err(|_| anyhow!("field \"B\" is required unless zero_sum is true"))
    };
    match kind {
        "bimatrix" => {
            let a = matrix(field(obj, "A")?, rows, cols, number)?;
            if zero_sum {
                Ok(Game::Bimatrix(BimatrixGame::zero_sum(a)))
            } else {
                Ok(Game::Bimatrix(BimatrixGame::new(a, matrix(b_value()?, rows, cols, number)?)?))
            }
        }
        "vector" => {
            let dim = usize_field(obj, "dim")?;
            let cell = |c: &Value| -> Result<Vec<Rational>> {
                let v = number_list(c)?;
                if v.len() != dim {
                    bail!("payoff vector has {} entries, expected dim = {dim}", v.len());
                }
                Ok(v)
            };
            let a = matrix(field(obj, "A")?, rows, cols, cell)?;
            if zero_sum {
                Ok(Game::Vector(VectorBimatrixGame::zero_sum(a)?))
            } else {
                Ok(Game::Vector(VectorBimatrixGame::new(a, matrix(b_value()?, rows, cols, cell)?)?))
            }
        }
        "distribution" => {
            let support = obj.get("support").map(number_list).transpose()?;
            let cell = |c: &Value| distribution(c, support.as_deref());
            let a = matrix(field(obj, "A")?, rows, cols, cell)?;
            if zero_sum {
                Ok(Game::Distribution(DistributionBimatrixGame::zero_sum(a)))
            } else {
                Ok(Game::Distribution(DistributionBimatrixGame::new(a, matrix(b_value()?, rows, cols, cell)?)?))
            }
        }
        other => bail!("unknown game type \"{other}\" (expected bimatrix, vector or distribution)"),
    }
}

pub fn load_game(path: &Path) -> Result<Game> {
    parse_game(&read_json(path)?).with_context(|| format!("invalid game document {}", path.display()))
}

fn matrix_json<T: Clone>(m: &Matrix<T>, cell: impl Fn(&T) -> Value) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(&cell).collect())).collect())
}

pub fn game_json(g: &Game) -> Value {
    let mut obj = Map::new();
    obj.insert("type".into(), json!(g.kind()));
    match g {
        Game::Bimatrix(g) => {
            obj.insert("zero_sum".into(), json!(g.zero_sum));
            obj.insert("rows".into(), json!(g.rows()));
            obj.insert("cols".into(), json!(g.cols()));
            obj.insert("A".into(), matrix_json(&g.a, rational_json));
            if !g.zero_sum {
                obj.insert("B".into(), matrix_json(&g.b, rational_json));
            }
        }
        Game::Vector(g) => {
            let zero_sum = g.a.iter().zip(g.b.iter()).all(|(a, b)| a.iter().zip(b).all(|(x, y)| x == &-y.clone()));
            obj.insert("zero_sum".into(), json!(zero_sum));
            obj.insert("rows".into(), json!(g.rows()));
            obj.insert("cols".into(), json!(g.cols()));
            obj.insert("dim".into(), json!(g.dim));
            obj.insert("A".into(), matrix_json(&g.a, |v| rationals_json(v)));
            if !zero_sum {
                obj.insert("B".into(), matrix_json(&g.b, |v| rationals_json(v)));
            }
        }
        Game::Distribution(g) => {
            obj.insert("zero_sum".into(), json!(g.zero_sum));
            obj.insert("rows".into(), json!(g.rows()));
            obj.insert("cols".into(), json!(g.cols()));
            obj.insert("support".into(), rationals_json(&g.common_support()));
            obj.insert("A".into(), matrix_json(&g.a, distribution_json));
            if !g.zero_sum {
                obj.insert("B".into(), matrix_json(&g.b, distribution_json));
            }
        }
    }
    Value::Object(obj)
}

pub fn load_distribution(path: &Path) -> Result<DiscreteDistribution<Rational>> {
    distribution(&read_json(path)?, None).with_context(|| format!("invalid distribution {}", path.display()))
}

/// A JSON array of numbers, or an object with a `"values"` array.
pub fn load_sequence(path: &Path) -> Result<Vec<Rational>> {
    let v = read_json(path)?;
    let list = match &v {
        Value::Object(obj) => field(obj, "values")?,
        other => other,
    };
    number_list(list).with_context(|| format!("invalid sequence {}", path.display()))
}

/// `{"atoms", "masses", "tail_mass", "bound_b"}`.
pub fn load_truncated(path: &Path) -> Result<TruncatedAtomSequence> {
    let v = read_json(path)?;
    let obj = v.as_object().ok_or_else(|| anyhow!("atom sequence must be a JSON object"))?;
    let seq = TruncatedAtomSequence::new(
        number_list(field(obj, "atoms")?)?,
        number_list(field(obj, "masses")?)?,
        number(field(obj, "tail_mass")?)?,
        number(field(obj, "bound_b")?)?,
    )?;
    Ok(seq)
}

pub fn truncated_json(s: &TruncatedAtomSequence) -> Value {
    json!({
        "atoms": rationals_json(s.atoms()),
        "masses": rationals_json(s.masses()),
        "tail_mass": rational_json(s.tail_mass()),
        "bound_b": rational_json(s.bound_b()),
    })
}

/// Comma-separated numbers, e.g. `1,3/2,4`.
pub fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(|t| parse_rational(t).map_err(Into::into)).collect()
}
