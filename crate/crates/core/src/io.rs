//! JSON schemas for inputs and results.
//!
//! Integers are written as JSON numbers when they fit in 64 bits and as
//! decimal strings otherwise; both forms are accepted on input.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{MonomialAlgebra, Presentation};
use crate::error::{Error, Result};
use crate::genfun::Quiver;
use crate::moduli::{ComponentSet, PointModuleTrunc, SubsetSeq, Variant};
use crate::morphisms::MonGraph;
use crate::poly::{IntPoly, RationalGF};
use crate::radical::RadicalReport;
use crate::words::{factors, Alphabet, Coding, FactorSet, Letter, Side, Word, WordGenerator};
use crate::Exactness;

/// An exact integer in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Small(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Small(v) => Ok(Int(BigInt::from(v))),
            Raw::Text(t) => BigInt::from_str(t.trim()).map(Int).map_err(D::Error::custom),
        }
    }
}

fn ints(p: &IntPoly) -> Vec<Int> {
    p.coeffs().iter().cloned().map(Int).collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GfJson {
    num: Vec<Int>,
    den: Vec<Int>,
}

impl Serialize for RationalGF {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GfJson { num: ints(self.num()), den: ints(self.den()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalGF {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let g = GfJson::deserialize(d)?;
        let poly = |v: Vec<Int>| IntPoly::new(v.into_iter().map(|i| i.0).collect());
        let den = poly(g.den);
        if den.coeff(0) == BigInt::from(0) {
            return Err(D::Error::custom("denominator must have a non-zero constant term"));
        }
        Ok(RationalGF::new(poly(g.num), den))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationJson {
    alphabet: Alphabet,
    #[serde(default)]
    forbidden: Vec<String>,
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let a = self.alphabet();
        PresentationJson {
            alphabet: a.clone(),
            forbidden: self.forbidden().iter().map(|w| a.format_word(w)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = PresentationJson::deserialize(d)?;
        let words = p
            .forbidden
            .iter()
            .map(|w| p.alphabet.parse_word(w))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Presentation::new(p.alphabet, words).map_err(D::Error::custom)
    }
}

/// A word generator together with the names of the letters it emits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGenerator {
    pub alphabet: Alphabet,
    pub generator: WordGenerator,
}

impl NamedGenerator {
    /// Generator with letters named by their indices.
    pub fn numeric(generator: WordGenerator) -> Self {
        NamedGenerator { alphabet: Alphabet::numeric(generator.letter_count()), generator }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodingJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alphabet: Option<Alphabet>,
    images: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum GeneratorJson {
    EventuallyPeriodic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<Alphabet>,
        #[serde(default)]
        preperiod: String,
        period: String,
    },
    Substitution {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<Alphabet>,
        rules: BTreeMap<String, String>,
        seed: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coding: Option<CodingJson>,
    },
    Sturmian {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<Alphabet>,
        cf: Vec<u32>,
        #[serde(default)]
        periodic: bool,
    },
    Explicit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alphabet: Option<Alphabet>,
        prefix: String,
    },
}

/// Digit alphabet just large enough for the given words.
fn digits_for(words: &[&str]) -> Result<Alphabet> {
    let mut top = 0u32;
    for w in words {
        for c in w.chars() {
            let v = c.to_digit(10).ok_or_else(|| Error::InvalidWord {
                word: w.to_string(),
                reason: "without an explicit alphabet, words are digit strings".into(),
            })?;
            top = top.max(v);
        }
    }
    Ok(Alphabet::numeric(top as usize + 1))
}

fn parse_all(alphabet: &Alphabet, words: &[&str]) -> Result<Vec<Word>> {
    words.iter().map(|w| alphabet.parse_word(w)).collect()
}

fn single_letter(alphabet: &Alphabet, s: &str) -> Result<Letter> {
    alphabet.index_of(s).ok_or_else(|| Error::InvalidWord { word: s.into(), reason: "unknown letter".into() })
}

impl TryFrom<GeneratorJson> for NamedGenerator {
    type Error = Error;

    fn try_from(g: GeneratorJson) -> Result<Self> {
        let named = match g {
            GeneratorJson::EventuallyPeriodic { alphabet, preperiod, period } => {
                let a = match alphabet {
                    Some(a) => a,
                    None => digits_for(&[&preperiod, &period])?,
                };
                let w = parse_all(&a, &[&preperiod, &period])?;
                let [preperiod, period]: [Word; 2] = w.try_into().expect("two words");
                NamedGenerator { alphabet: a, generator: WordGenerator::EventuallyPeriodic { preperiod, period } }
            }
            GeneratorJson::Substitution { alphabet, rules, seed, coding } => {
                let src = match alphabet {
                    Some(a) => a,
                    None => Alphabet::new(rules.keys().cloned())?,
                };
                let mut images = Vec::with_capacity(src.len());
                for sym in src.symbols() {
                    let r = rules.get(sym).ok_or_else(|| Error::Schema(format!("no rule for letter {sym:?}")))?;
                    images.push(src.parse_word(r)?);
                }
                if rules.len() != src.len() {
                    return Err(Error::Schema("rules mention letters outside the alphabet".into()));
                }
                let seed = single_letter(&src, &seed)?;
                let (alphabet, coding) = match coding {
                    None => (src.clone(), None),
                    Some(c) => {
                        let values: Vec<&str> = c.images.values().map(String::as_str).collect();
                        let dst = match c.alphabet {
                            Some(a) => a,
                            None => digits_for(&values)?,
                        };
                        let mut imgs = Vec::with_capacity(src.len());
                        for sym in src.symbols() {
                            let w = c
                                .images
                                .get(sym)
                                .ok_or_else(|| Error::Schema(format!("no coding image for letter {sym:?}")))?;
                            imgs.push(dst.parse_word(w)?);
                        }
                        (dst, Some(Coding { images: imgs }))
                    }
                };
                NamedGenerator { alphabet, generator: WordGenerator::Substitution { rules: images, seed, coding } }
            }
            GeneratorJson::Sturmian { alphabet, cf, periodic } => {
                let a = alphabet.unwrap_or_else(|| Alphabet::numeric(2));
                if a.len() != 2 {
                    return Err(Error::Schema("a Sturmian word needs a two-letter alphabet".into()));
                }
                NamedGenerator { alphabet: a, generator: WordGenerator::Sturmian { cf, periodic } }
            }
            GeneratorJson::Explicit { alphabet, prefix } => {
                let a = match alphabet {
                    Some(a) => a,
                    None => digits_for(&[&prefix])?,
                };
                let prefix = a.parse_word(&prefix)?;
                NamedGenerator { alphabet: a, generator: WordGenerator::Explicit { prefix } }
            }
        };
        named.generator.validate()?;
        if named.generator.letter_count() > named.alphabet.len() {
            return Err(Error::Schema("generator emits letters outside its alphabet".into()));
        }
        Ok(named)
    }
}

impl From<&NamedGenerator> for GeneratorJson {
    fn from(n: &NamedGenerator) -> Self {
        let a = &n.alphabet;
        let alphabet = Some(a.clone());
        match &n.generator {
            WordGenerator::EventuallyPeriodic { preperiod, period } => GeneratorJson::EventuallyPeriodic {
                alphabet,
                preperiod: a.format_word(preperiod),
                period: a.format_word(period),
            },
            WordGenerator::Substitution { rules, seed, coding } => {
                // without a coding the rules live on the output alphabet
                let src = match coding {
                    None => a.clone(),
                    Some(_) => Alphabet::numeric(rules.len()),
                };
                let rules_json = rules
                    .iter()
                    .enumerate()
                    .map(|(l, r)| (src.symbol(l as Letter).to_string(), src.format_word(r)))
                    .collect();
                GeneratorJson::Substitution {
                    alphabet: Some(src.clone()),
                    rules: rules_json,
                    seed: src.symbol(*seed).to_string(),
                    coding: coding.as_ref().map(|c| CodingJson {
                        alphabet: Some(a.clone()),
                        images: c
                            .images
                            .iter()
                            .enumerate()
                            .map(|(l, w)| (src.symbol(l as Letter).to_string(), a.format_word(w)))
                            .collect(),
                    }),
                }
            }
            WordGenerator::Sturmian { cf, periodic } => {
                GeneratorJson::Sturmian { alphabet, cf: cf.clone(), periodic: *periodic }
            }
            WordGenerator::Explicit { prefix } => GeneratorJson::Explicit { alphabet, prefix: a.format_word(prefix) },
        }
    }
}

impl Serialize for NamedGenerator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GeneratorJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for NamedGenerator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        NamedGenerator::try_from(GeneratorJson::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// A rational scalar: a JSON integer or a string such as `"-2/3"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar(pub BigRational);

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            Int(self.0.to_integer()).serialize(s)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Small(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Small(v) => Ok(Scalar(BigRational::from(BigInt::from(v)))),
            Raw::Text(t) => BigRational::from_str(t.trim()).map(Scalar).map_err(D::Error::custom),
        }
    }
}

/// Contents of an input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Presentation(Presentation),
    Generator(NamedGenerator),
}

impl Source {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Source::Presentation(p) => p.alphabet(),
            Source::Generator(g) => &g.alphabet,
        }
    }

    /// The algebra, with an oracle valid up to length `len` for generators.
    pub fn algebra(&self, len: usize, multiplier: usize) -> Result<MonomialAlgebra> {
        match self {
            Source::Presentation(p) => Ok(MonomialAlgebra::from(p.clone())),
            Source::Generator(g) => {
                let f = factors(&g.generator, len, multiplier)?;
                MonomialAlgebra::oracle(g.alphabet.clone(), f)
            }
        }
    }

    pub fn presentation(&self, what: &'static str) -> Result<&Presentation> {
        match self {
            Source::Presentation(p) => Ok(p),
            Source::Generator(_) => Err(Error::RequiresPresentation(what)),
        }
    }
}

/// `{"presentation": ...}` or `{"generator": ...}`, plus an optional module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Presentation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<NamedGenerator>,
    /// Rows of a truncated point module, one scalar per letter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<Vec<Vec<Scalar>>>,
}

impl InputFile {
    pub fn source(&self) -> Result<Source> {
        match (&self.presentation, &self.generator) {
            (Some(p), None) => Ok(Source::Presentation(p.clone())),
            (None, Some(g)) => Ok(Source::Generator(g.clone())),
            _ => Err(Error::Schema("exactly one of \"presentation\" or \"generator\" is required".into())),
        }
    }

    pub fn module(&self) -> Result<PointModuleTrunc> {
        let rows = self.module.as_ref().ok_or_else(|| Error::Schema("missing \"module\" field".into()))?;
        Ok(PointModuleTrunc { scalars: rows.iter().map(|r| r.iter().map(|s| s.0.clone()).collect()).collect() })
    }
}

/// Parses an input file, reporting the line and column of schema errors.
pub fn parse_input(text: &str) -> Result<InputFile> {
    serde_json::from_str(text).map_err(|e| Error::Schema(format!("line {}, column {}: {e}", e.line(), e.column())))
}

pub fn format_seq(alphabet: &Alphabet, s: &SubsetSeq) -> Vec<Vec<String>> {
    s.0.iter().map(|c| c.iter().map(|l| alphabet.symbol(l).to_string()).collect()).collect()
}

/// Components of a truncated point scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentsJson {
    pub variant: Variant,
    pub n: usize,
    pub count: usize,
    pub dimension: usize,
    pub components: Vec<Vec<Vec<String>>>,
    pub exactness: Exactness,
}

impl ComponentsJson {
    pub fn new(alphabet: &Alphabet, c: &ComponentSet) -> Self {
        ComponentsJson {
            variant: c.variant,
            n: c.n,
            count: c.components.len(),
            dimension: c.dimension,
            components: c.components.iter().map(|s| format_seq(alphabet, s)).collect(),
            exactness: c.exactness,
        }
    }
}

/// Factors by length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorsJson {
    pub factors: BTreeMap<usize, Vec<String>>,
    pub exactness: Exactness,
}

impl FactorsJson {
    pub fn new(alphabet: &Alphabet, f: &FactorSet) -> Self {
        FactorsJson {
            factors: (0..=f.n_max()).map(|n| (n, f.words(n).iter().map(|w| alphabet.format_word(w)).collect())).collect(),
            exactness: f.exactness(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalJson {
    pub side: Side,
    pub generators: Vec<String>,
    pub quotient: Presentation,
    pub prolongable_input: bool,
    pub exactness: Exactness,
}

impl RadicalJson {
    pub fn new(r: &RadicalReport) -> Self {
        let a = r.quotient.alphabet();
        RadicalJson {
            side: r.side,
            generators: r.generators.iter().map(|w| a.format_word(w)).collect(),
            quotient: r.quotient.clone(),
            prolongable_input: r.is_prolongable_input,
            exactness: Exactness::Exact,
        }
    }
}

/// The window quiver: vertices, successor lists and indicator vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub variant: Variant,
    pub d: usize,
    pub vertices: Vec<Vec<Vec<String>>>,
    pub adjacency: Vec<Vec<usize>>,
    pub w_pre: Vec<u8>,
    pub w_post: Vec<u8>,
}

impl QuiverJson {
    pub fn new(alphabet: &Alphabet, q: &Quiver) -> Self {
        QuiverJson {
            variant: q.variant,
            d: q.d,
            vertices: q.vertices.iter().map(|s| format_seq(alphabet, s)).collect(),
            adjacency: q.succ.clone(),
            w_pre: q.w_pre.iter().map(|&b| b as u8).collect(),
            w_post: q.w_post.iter().map(|&b| b as u8).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonGraphJson {
    pub depth: usize,
    pub layers: Vec<Vec<String>>,
    pub edges: Vec<(String, String)>,
    pub splitting: Vec<Vec<String>>,
    pub exactness: Exactness,
}

impl MonGraphJson {
    pub fn new(alphabet: &Alphabet, g: &MonGraph, exactness: Exactness) -> Self {
        let name = |w: &Word| alphabet.format_word(w);
        let mut edges = Vec::new();
        for (i, kids) in g.children.iter().enumerate() {
            for (j, ks) in kids.iter().enumerate() {
                for &k in ks {
                    edges.push((name(&g.layers[i][j]), name(&g.layers[i + 1][k])));
                }
            }
        }
        MonGraphJson {
            depth: g.depth,
            layers: g.layers.iter().map(|l| l.iter().map(name).collect()).collect(),
            edges,
            splitting: g.splitting().iter().map(|l| l.iter().map(name).collect()).collect(),
            exactness,
        }
    }
}
