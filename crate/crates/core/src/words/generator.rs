use super::{Letter, Word};
use crate::error::{Error, Result};

/// Default ratio between scanned prefix length and maximal factor length.
pub const DEFAULT_PREFIX_MULTIPLIER: usize = 16;

/// Iteration cap for substitution fixed points.
const MAX_SUBSTITUTION_ROUNDS: usize = 64;

/// Letter-to-word coding applied after a substitution fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coding {
    /// `images[l]` is the image of source letter `l`.
    pub images: Vec<Word>,
}

/// A recipe for a right-infinite word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordGenerator {
    /// `preperiod · period^∞`.
    EventuallyPeriodic { preperiod: Word, period: Word },
    /// Fixed point of `l -> rules[l]` starting at `seed`, optionally coded.
    Substitution { rules: Vec<Word>, seed: Letter, coding: Option<Coding> },
    /// Characteristic Sturmian word from continued-fraction partial quotients.
    /// With `periodic` the list is repeated forever (a quadratic slope).
    Sturmian { cf: Vec<u32>, periodic: bool },
    /// A finite word, taken as is.
    Explicit { prefix: Word },
}

impl WordGenerator {
    pub fn thue_morse() -> Self {
        WordGenerator::Substitution {
            rules: vec![Word(vec![0, 1]), Word(vec![1, 0])],
            seed: 0,
            coding: None,
        }
    }

    pub fn fibonacci() -> Self {
        WordGenerator::Sturmian { cf: vec![1], periodic: true }
    }

    pub fn constant(letter: Letter) -> Self {
        WordGenerator::EventuallyPeriodic { preperiod: Word::empty(), period: Word(vec![letter]) }
    }

    /// Smallest alphabet size that covers every emitted letter.
    pub fn letter_count(&self) -> usize {
        let top = |ws: &mut dyn Iterator<Item = &Word>| {
            ws.flat_map(|w| w.iter().copied()).max().map_or(1, |l| l as usize + 1)
        };
        match self {
            WordGenerator::EventuallyPeriodic { preperiod, period } => {
                top(&mut [preperiod, period].into_iter())
            }
            WordGenerator::Substitution { rules, coding: None, .. } => rules.len(),
            WordGenerator::Substitution { coding: Some(c), .. } => top(&mut c.images.iter()),
            WordGenerator::Sturmian { .. } => 2,
            WordGenerator::Explicit { prefix } => top(&mut std::iter::once(prefix)),
        }
    }

    /// `true` when the factor sets of this generator can be computed exactly.
    pub fn is_exact(&self) -> bool {
        matches!(
            self,
            WordGenerator::EventuallyPeriodic { .. } | WordGenerator::Explicit { .. }
        )
    }

    /// Checks structural requirements without generating anything.
    pub fn validate(&self) -> Result<()> {
        match self {
            WordGenerator::EventuallyPeriodic { period, .. } if period.is_empty() => {
                Err(Error::InvalidInput("period must be non-empty".into()))
            }
            WordGenerator::Sturmian { cf, .. } if cf.is_empty() || cf.contains(&0) => Err(
                Error::InvalidInput("partial quotients must be a non-empty list of positive integers".into()),
            ),
            WordGenerator::Substitution { rules, seed, coding } => {
                let k = rules.len();
                if (*seed as usize) >= k {
                    return Err(Error::NonProlongingSubstitution(format!("seed {seed} has no rule")));
                }
                for (l, r) in rules.iter().enumerate() {
                    if r.is_empty() || r.iter().any(|&x| x as usize >= k) {
                        return Err(Error::NonProlongingSubstitution(format!(
                            "rule for letter {l} is empty or uses an unknown letter"
                        )));
                    }
                }
                if rules[*seed as usize][0] != *seed {
                    return Err(Error::NonProlongingSubstitution(
                        "the seed's image must start with the seed".into(),
                    ));
                }
                if let Some(c) = coding {
                    if c.images.len() != k || c.images.iter().any(|w| w.is_empty()) {
                        return Err(Error::InvalidInput(
                            "coding needs one non-empty image per source letter".into(),
                        ));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// The first `len` letters of the infinite word.
    pub fn prefix(&self, len: usize) -> Result<Word> {
        self.validate()?;
        let mut out = match self {
            WordGenerator::EventuallyPeriodic { preperiod, period } => {
                let mut w = preperiod.0.clone();
                while w.len() < len {
                    w.extend_from_slice(period);
                }
                w
            }
            WordGenerator::Explicit { prefix } => {
                if prefix.len() < len {
                    return Err(Error::LengthBeyondOracle { len, max: prefix.len() });
                }
                prefix.0.clone()
            }
            WordGenerator::Substitution { rules, seed, coding } => {
                let raw = substitution_prefix(rules, *seed, len)?;
                match coding {
                    None => raw,
                    Some(c) => {
                        let mut w = Vec::with_capacity(len + 8);
                        for &l in &raw {
                            if w.len() >= len {
                                break;
                            }
                            w.extend_from_slice(&c.images[l as usize]);
                        }
                        w
                    }
                }
            }
            WordGenerator::Sturmian { cf, periodic } => sturmian_prefix(cf, *periodic, len)?,
        };
        out.truncate(len);
        Ok(Word(out))
    }
}

fn substitution_prefix(rules: &[Word], seed: Letter, len: usize) -> Result<Vec<Letter>> {
    let mut w = vec![seed];
    for _ in 0..MAX_SUBSTITUTION_ROUNDS {
        if w.len() >= len {
            return Ok(w);
        }
        let next: Vec<Letter> = w.iter().flat_map(|&l| rules[l as usize].iter().copied()).collect();
        if next.len() <= w.len() {
            return Err(Error::NonProlongingSubstitution(format!(
                "iterates stop growing at length {}",
                w.len()
            )));
        }
        w = next;
    }
    if w.len() >= len {
        Ok(w)
    } else {
        Err(Error::NonProlongingSubstitution(format!(
            "length {len} not reached after {MAX_SUBSTITUTION_ROUNDS} rounds"
        )))
    }
}

/// Standard words: s_{-1} = 1, s_0 = 0, s_k = s_{k-1}^{a_k} s_{k-2}.
fn sturmian_prefix(cf: &[u32], periodic: bool, len: usize) -> Result<Vec<Letter>> {
    let mut older: Vec<Letter> = vec![1];
    let mut prev: Vec<Letter> = vec![0];
    if len <= 1 {
        return Ok(prev);
    }
    let mut k = 0;
    loop {
        let a = match cf.get(k) {
            Some(&a) => a,
            None if periodic => cf[k % cf.len()],
            None => {
                return Err(Error::InsufficientPrecision { requested: len, available: prev.len() })
            }
        };
        let mut next = Vec::with_capacity(prev.len() * a as usize + older.len());
        for _ in 0..a {
            next.extend_from_slice(&prev);
        }
        next.extend_from_slice(&older);
        older = std::mem::replace(&mut prev, next);
        k += 1;
        if prev.len() >= len {
            return Ok(prev);
        }
    }
}
