//! JSON schemas for SFTs, potentials, classifications and measures.
//! Rational values are strings (`"p/q"` or `"p"`), preserved exactly on
//! round trips.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use groundstate_core::ergodic::{Classification, Tag};
use groundstate_core::measures::{InvariantMeasure, MarkovMeasure};
use groundstate_core::num::{Enclosure, Rat, Scalar};
use groundstate_core::potential::Potential;
use groundstate_core::sft::{Sft, Word};

use crate::CliError;

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SftJson {
    pub d: usize,
    pub transitions: Vec<Vec<u8>>,
    pub theta: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum ValueJson {
    Rational(String),
    Interval { lo: String, hi: String },
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PotentialJson {
    pub k: usize,
    pub values: BTreeMap<String, ValueJson>,
}

/// The input file: an SFT together with a potential on its cylinders.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct InputJson {
    pub sft: SftJson,
    pub potential: PotentialJson,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct IntervalJson {
    pub lo: String,
    pub hi: String,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(tag = "type")]
pub enum MeasureJson {
    #[serde(rename = "periodic")]
    Periodic { word: String },
    #[serde(rename = "markov")]
    Markov {
        block_words: Vec<String>,
        pi: Vec<String>,
        p: Vec<Vec<String>>,
        stationarity_defect: String,
    },
    #[serde(rename = "components")]
    Components { components: Vec<MeasureJson> },
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ClassificationJson {
    pub tag: String,
    pub k: usize,
    pub b: IntervalJson,
    pub orbits: Vec<String>,
    pub certificate_radius: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_entropy: Option<IntervalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureJson>,
}

pub fn parse_rat(s: &str) -> Result<Rat, CliError> {
    use groundstate_core::num::BigInt;
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad_number(s))?;
        let d: BigInt = den.trim().parse().map_err(|_| bad_number(s))?;
        if d == 0.into() {
            return Err(bad_number(s));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.trim_start().starts_with('-');
        let i: BigInt = ip.parse().map_err(|_| bad_number(s))?;
        let mut num = i;
        let mut den: BigInt = 1.into();
        for c in fp.chars() {
            let digit = c.to_digit(10).ok_or_else(|| bad_number(s))?;
            let d10: BigInt = 10.into();
            num = &num * &d10;
            den = &den * &d10;
            let dd: BigInt = (digit as i64).into();
            if neg {
                num = &num - &dd;
            } else {
                num = &num + &dd;
            }
        }
        return Ok(Rat::new(num, den));
    }
    let n: BigInt = s.parse().map_err(|_| bad_number(s))?;
    Ok(Rat::from_integer(n))
}

fn bad_number(s: &str) -> CliError {
    CliError::Input(format!("cannot parse number {s:?}"))
}

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_word(s: &str, d: usize) -> Result<Word, CliError> {
    // Mirrors the display form: dot-separated whenever a symbol beyond 9
    // occurs, plain digit string otherwise.
    let symbols: Vec<u8> = if s.contains('.') {
        s.split('.')
            .map(|p| p.parse::<u8>().map_err(|_| CliError::Input(format!("bad word {s:?}"))))
            .collect::<Result<_, _>>()?
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|x| x as u8)
                    .ok_or_else(|| CliError::Input(format!("bad word {s:?}")))
            })
            .collect::<Result<_, _>>()?
    };
    if symbols.iter().any(|&x| (x as usize) >= d) {
        return Err(CliError::Input(format!("word {s:?} uses symbols outside 0..{d}")));
    }
    Ok(Word(symbols))
}

pub fn format_word(w: &Word) -> String {
    format!("{w}")
}

pub fn interval_json(e: &Enclosure) -> IntervalJson {
    IntervalJson { lo: format_rat(&e.lo_rat()), hi: format_rat(&e.hi_rat()) }
}

pub fn scalar_interval_json(s: &Scalar) -> IntervalJson {
    IntervalJson { lo: format_rat(&s.lo_rat()), hi: format_rat(&s.hi_rat()) }
}

/// Decode the input file into core types.  `require_exact` enforces the
/// exact-mode contract (all values rational).
pub fn decode_input(input: &InputJson, require_exact: bool) -> Result<(Sft, Potential), CliError> {
    if input.sft.transitions.len() != input.sft.d {
        return Err(CliError::Input(format!(
            "transition matrix is {}x? but d = {}",
            input.sft.transitions.len(),
            input.sft.d
        )));
    }
    let theta = parse_rat(&input.sft.theta)?;
    let sft = Sft::new(input.sft.transitions.clone(), theta).map_err(CliError::from_core)?;
    let k = input.potential.k;
    if k < 1 {
        return Err(CliError::Input("potential needs k >= 1".into()));
    }
    let mut entries = Vec::with_capacity(input.potential.values.len());
    for (ws, vs) in &input.potential.values {
        let w = parse_word(ws, input.sft.d)?;
        if w.len() != k {
            return Err(CliError::Input(format!("cylinder {ws:?} does not have length {k}")));
        }
        let scalar = match vs {
            ValueJson::Rational(r) => Scalar::Exact(parse_rat(r)?),
            ValueJson::Interval { lo, hi } => {
                if require_exact {
                    return Err(CliError::Input(
                        "exact mode requires rational values, found an interval".into(),
                    ));
                }
                let lo = parse_rat(lo)?;
                let hi = parse_rat(hi)?;
                if lo > hi {
                    return Err(CliError::Input(format!("inverted interval on {ws:?}")));
                }
                // Exact for dyadic endpoints, outward-rounded otherwise;
                // containment is preserved either way.
                Scalar::Interval(Enclosure::from_rat_pair(&lo, &hi, 96))
            }
        };
        entries.push((w, scalar));
    }
    let phi = Potential::new(&sft, k, entries).map_err(CliError::from_core)?;
    Ok((sft, phi))
}

pub fn encode_input(sft: &Sft, phi: &Potential) -> InputJson {
    let sft_json = SftJson {
        d: sft.alphabet_size(),
        transitions: sft.transitions().to_vec(),
        theta: format_rat(sft.theta()),
    };
    let mut values = BTreeMap::new();
    for (w, v) in phi.cylinders().iter().zip(phi.values()) {
        let vj = match v {
            Scalar::Exact(r) => ValueJson::Rational(format_rat(r)),
            Scalar::Interval(e) => ValueJson::Interval {
                lo: format_rat(&e.lo_rat()),
                hi: format_rat(&e.hi_rat()),
            },
        };
        values.insert(format_word(w), vj);
    }
    InputJson { sft: sft_json, potential: PotentialJson { k: phi.k(), values } }
}

pub fn measure_json(mu: &InvariantMeasure) -> MeasureJson {
    match mu {
        InvariantMeasure::Periodic(o) => MeasureJson::Periodic { word: format_word(o.segment()) },
        InvariantMeasure::Markov(m) => markov_json(m),
        InvariantMeasure::Components(cs) => {
            MeasureJson::Components { components: cs.iter().map(measure_json).collect() }
        }
    }
}

fn markov_json(m: &MarkovMeasure) -> MeasureJson {
    MeasureJson::Markov {
        block_words: m.block_words.iter().map(format_word).collect(),
        pi: m.pi.iter().map(format_rat).collect(),
        p: m.p.iter().map(|row| row.iter().map(format_rat).collect()).collect(),
        stationarity_defect: format_rat(&m.stationarity_defect),
    }
}

pub fn classification_json(
    c: &Classification,
    residual: Option<&Enclosure>,
    measure: Option<&InvariantMeasure>,
) -> ClassificationJson {
    let (tag, precision) = match &c.tag {
        Tag::O => ("O_k".to_string(), None),
        Tag::U => ("U_k".to_string(), None),
        Tag::V => ("V_k".to_string(), None),
        Tag::Undetermined { precision } => ("undetermined".to_string(), Some(*precision)),
    };
    ClassificationJson {
        tag,
        k: c.k,
        b: scalar_interval_json(&c.b),
        orbits: c.witness.orbits.iter().map(|o| format_word(o.segment())).collect(),
        certificate_radius: c.certificate_radius.as_ref().map(format_rat),
        precision,
        residual_entropy: residual.map(interval_json),
        measure: measure.map(measure_json),
    }
}
