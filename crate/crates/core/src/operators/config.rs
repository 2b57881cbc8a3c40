use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Crossover and mutation rates addressed by `pc_idx` / `pm_idx`.
pub const RATES: [f64; 6] = [0.0, 0.2, 0.4, 0.5, 0.6, 0.8];

/// Option counts in slot order: p_c, SelectC, Crossover, p_m, SelectM, Mutation, Replace.
pub const SLOT_SIZES: [usize; 7] = [6, 7, 11, 6, 7, 11, 11];

pub const SLOT_NAMES: [&str; 7] = ["pc", "selc", "cross", "pm", "selm", "mut", "repl"];

/// One point of the GA design space: an option index per operator slot.
///
/// Values are always canonical: with `p_c = 0` the crossover-only slots (SelectC,
/// Crossover, `p_m`) are never consulted and are stored as 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration", into = "RawConfiguration")]
pub struct Configuration {
    slots: [u8; 7],
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfiguration {
    pc_idx: usize,
    selc_idx: usize,
    cross_idx: usize,
    pm_idx: usize,
    selm_idx: usize,
    mut_idx: usize,
    repl_idx: usize,
}

impl TryFrom<RawConfiguration> for Configuration {
    type Error = Error;

    fn try_from(r: RawConfiguration) -> Result<Self> {
        Configuration::from_slots([
            r.pc_idx,
            r.selc_idx,
            r.cross_idx,
            r.pm_idx,
            r.selm_idx,
            r.mut_idx,
            r.repl_idx,
        ])
    }
}

impl From<Configuration> for RawConfiguration {
    fn from(c: Configuration) -> Self {
        let s = c.slots();
        Self {
            pc_idx: s[0],
            selc_idx: s[1],
            cross_idx: s[2],
            pm_idx: s[3],
            selm_idx: s[4],
            mut_idx: s[5],
            repl_idx: s[6],
        }
    }
}

impl Configuration {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        pc: usize,
        selc: usize,
        cross: usize,
        pm: usize,
        selm: usize,
        mutation: usize,
        repl: usize,
    ) -> Result<Self> {
        Self::from_slots([pc, selc, cross, pm, selm, mutation, repl])
    }

    /// Validates indices against [`SLOT_SIZES`] and canonicalizes.
    pub fn from_slots(slots: [usize; 7]) -> Result<Self> {
        for (i, (&v, &size)) in slots.iter().zip(SLOT_SIZES.iter()).enumerate() {
            if v >= size {
                return Err(Error::UnknownOperator {
                    slot: SLOT_NAMES[i],
                    index: v,
                });
            }
        }
        let mut s = slots.map(|v| v as u8);
        if s[0] == 0 {
            s[1] = 0;
            s[2] = 0;
            s[3] = 0;
        }
        Ok(Self { slots: s })
    }

    pub fn slots(&self) -> [usize; 7] {
        self.slots.map(|v| v as usize)
    }

    pub fn pc_idx(&self) -> usize {
        self.slots[0] as usize
    }
    pub fn selc_idx(&self) -> usize {
        self.slots[1] as usize
    }
    pub fn cross_idx(&self) -> usize {
        self.slots[2] as usize
    }
    pub fn pm_idx(&self) -> usize {
        self.slots[3] as usize
    }
    pub fn selm_idx(&self) -> usize {
        self.slots[4] as usize
    }
    pub fn mut_idx(&self) -> usize {
        self.slots[5] as usize
    }
    pub fn repl_idx(&self) -> usize {
        self.slots[6] as usize
    }

    pub fn crossover_rate(&self) -> f64 {
        RATES[self.pc_idx()]
    }

    pub fn mutation_rate(&self) -> f64 {
        RATES[self.pm_idx()]
    }

    /// Legend string with an explicit population size.
    pub fn legend(&self, population: usize) -> String {
        let s = self.slots;
        format!(
            "P{population} C{} s{} c{} a0 M{} u{} m{} r{} O0",
            s[0], s[1], s[2], s[3], s[4], s[5], s[6]
        )
    }
}

/// Full Cartesian product of the slot option counts.
pub fn config_space_size() -> u64 {
    SLOT_SIZES.iter().map(|&s| s as u64).product()
}

/// Number of distinct canonical configurations.
pub fn canonical_space_size() -> u64 {
    let [pc, selc, cross, pm, selm, mutation, repl] = SLOT_SIZES.map(|s| s as u64);
    let without_crossover = selm * mutation * repl;
    without_crossover + (pc - 1) * selc * cross * pm * without_crossover
}

/// Parses `"P5 C<pc> s<selC> c<cross> a0 M<pm> u<selM> m<mut> r<repl> O0"`.
///
/// Returns the configuration and the population size carried by the `P` token.
pub fn parse_config(text: &str) -> Result<(Configuration, usize)> {
    const PREFIXES: [char; 10] = ['P', 'C', 's', 'c', 'a', 'M', 'u', 'm', 'r', 'O'];
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let err = |token: usize, text: &str, reason: String| Error::Parse {
        token,
        text: text.to_string(),
        reason,
    };
    if tokens.len() != PREFIXES.len() {
        let (pos, tok) = if tokens.len() > PREFIXES.len() {
            (PREFIXES.len(), tokens[PREFIXES.len()])
        } else {
            (tokens.len(), "")
        };
        return Err(err(
            pos,
            tok,
            format!("expected {} tokens, found {}", PREFIXES.len(), tokens.len()),
        ));
    }
    let mut values = [0usize; 10];
    for (i, (tok, prefix)) in tokens.iter().zip(PREFIXES).enumerate() {
        let digits = tok
            .strip_prefix(prefix)
            .ok_or_else(|| err(i, tok, format!("expected prefix '{prefix}'")))?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(i, tok, "expected a decimal index".into()));
        }
        values[i] = digits
            .parse()
            .map_err(|_| err(i, tok, "index too large".into()))?;
    }
    if values[0] == 0 {
        return Err(err(0, tokens[0], "population size must be >= 1".into()));
    }
    for i in [4, 9] {
        if values[i] != 0 {
            return Err(err(i, tokens[i], "this slot only supports option 0".into()));
        }
    }
    let slots = [
        values[1], values[2], values[3], values[5], values[6], values[7], values[8],
    ];
    let token_of_slot = [1, 2, 3, 5, 6, 7, 8];
    for (s, (&v, &size)) in slots.iter().zip(SLOT_SIZES.iter()).enumerate() {
        if v >= size {
            let t = token_of_slot[s];
            return Err(err(
                t,
                tokens[t],
                format!(
                    "index {v} out of range for {} ({size} options)",
                    SLOT_NAMES[s]
                ),
            ));
        }
    }
    Ok((Configuration::from_slots(slots)?, values[0]))
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.legend(5))
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_config(s).map(|(c, _)| c)
    }
}
