//! Named scheme descriptions and the registered verification corpus.
//!
//! A [`SchemeSpec`] prints as its id, e.g. `rank2(3)`, `thin-group(D4)`,
//! `schurian(3;(0 1))` or `direct-sum(rank2(2),discrete(1))`, and parses back
//! from the same text.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generators::{self, CayleyTable, GeneratorError, Permutation};
use crate::scheme::{Configuration, Scheme};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeSpec {
    Rank2(usize),
    Discrete(usize),
    ThinCyclic(usize),
    ThinSym(usize),
    ThinGroup(String),
    Schurian { n: usize, generators: Vec<Permutation> },
    Hamming { d: usize, q: usize },
    Johnson { v: usize, k: usize },
    DirectSum(Box<SchemeSpec>, Box<SchemeSpec>),
}

impl SchemeSpec {
    pub fn build(&self) -> Result<Scheme, GeneratorError> {
        match self {
            SchemeSpec::Rank2(n) => generators::rank2(*n),
            SchemeSpec::Discrete(n) => generators::discrete(*n),
            SchemeSpec::ThinCyclic(n) => generators::thin_group_scheme(&CayleyTable::cyclic(*n)?),
            SchemeSpec::ThinSym(m) => generators::thin_group_scheme(&CayleyTable::symmetric(*m)?),
            SchemeSpec::ThinGroup(name) => generators::thin_group_scheme(&CayleyTable::by_name(name)?),
            SchemeSpec::Schurian { n, generators } => generators::schurian(generators, *n),
            SchemeSpec::Hamming { d, q } => generators::hamming(*d, *q),
            SchemeSpec::Johnson { v, k } => generators::johnson(*v, *k),
            SchemeSpec::DirectSum(a, b) => Ok(generators::direct_sum(&a.build()?, &b.build()?)),
        }
    }

    pub fn configuration(&self) -> Result<Configuration, GeneratorError> {
        Ok(Configuration::new(self.build()?)?)
    }

    /// Thin scheme of an abelian group, with the group order.
    pub fn thin_abelian_order(&self) -> Option<usize> {
        let group = match self {
            SchemeSpec::ThinCyclic(n) => return Some(*n),
            SchemeSpec::ThinSym(m) => CayleyTable::symmetric(*m).ok()?,
            SchemeSpec::ThinGroup(name) => CayleyTable::by_name(name).ok()?,
            _ => return None,
        };
        group.is_abelian().then(|| group.order())
    }

    /// Parses a family name and its command-line parameters, e.g.
    /// `("hamming", ["2", "3"])` or `("schurian", ["3", "(0 1)"])`.
    pub fn from_family(family: &str, params: &[String]) -> Result<Self, SpecError> {
        let bad = || SpecError::Parameters { family: family.to_string(), params: params.to_vec() };
        let ints = || -> Result<Vec<usize>, SpecError> {
            params.iter().map(|p| p.trim().parse::<usize>().map_err(|_| bad())).collect()
        };
        let one = || -> Result<usize, SpecError> {
            match ints()?.as_slice() {
                [x] => Ok(*x),
                _ => Err(bad()),
            }
        };
        let two = || -> Result<(usize, usize), SpecError> {
            match ints()?.as_slice() {
                [x, y] => Ok((*x, *y)),
                _ => Err(bad()),
            }
        };
        Ok(match family {
            "rank2" => SchemeSpec::Rank2(one()?),
            "discrete" => SchemeSpec::Discrete(one()?),
            "thin-cyclic" => SchemeSpec::ThinCyclic(one()?),
            "thin-sym" => SchemeSpec::ThinSym(one()?),
            "thin-group" => match params {
                [name] => SchemeSpec::ThinGroup(name.trim().to_string()),
                _ => return Err(bad()),
            },
            "schurian" => {
                let (n, gens) = params.split_first().ok_or_else(bad)?;
                let n: usize = n.trim().parse().map_err(|_| bad())?;
                let generators = gens
                    .iter()
                    .map(|g| Permutation::from_cycles(n, g))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad())?;
                SchemeSpec::Schurian { n, generators }
            }
            "hamming" => {
                let (d, q) = two()?;
                SchemeSpec::Hamming { d, q }
            }
            "johnson" => {
                let (v, k) = two()?;
                SchemeSpec::Johnson { v, k }
            }
            "direct-sum" => match params {
                [a, b] => SchemeSpec::DirectSum(Box::new(a.parse()?), Box::new(b.parse()?)),
                _ => return Err(bad()),
            },
            other => return Err(SpecError::UnknownFamily(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("bad parameters for {family}: {params:?}")]
    Parameters { family: String, params: Vec<String> },
    #[error("cannot parse scheme id {0:?}")]
    Syntax(String),
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeSpec::Rank2(n) => write!(f, "rank2({n})"),
            SchemeSpec::Discrete(n) => write!(f, "discrete({n})"),
            SchemeSpec::ThinCyclic(n) => write!(f, "thin-cyclic({n})"),
            SchemeSpec::ThinSym(m) => write!(f, "thin-sym({m})"),
            SchemeSpec::ThinGroup(name) => write!(f, "thin-group({name})"),
            SchemeSpec::Schurian { n, generators } => {
                write!(f, "schurian({n}")?;
                for g in generators {
                    write!(f, ";{g}")?;
                }
                f.write_str(")")
            }
            SchemeSpec::Hamming { d, q } => write!(f, "hamming({d},{q})"),
            SchemeSpec::Johnson { v, k } => write!(f, "johnson({v},{k})"),
            SchemeSpec::DirectSum(a, b) => write!(f, "direct-sum({a},{b})"),
        }
    }
}

/// Splits `s` at top-level occurrences of `sep` (outside parentheses).
fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl FromStr for SchemeSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let syntax = || SpecError::Syntax(s.to_string());
        let open = s.find('(').ok_or_else(syntax)?;
        let body = s[open + 1..].strip_suffix(')').ok_or_else(syntax)?;
        let family = &s[..open];
        let sep = if family == "schurian" { ';' } else { ',' };
        let params: Vec<String> = split_top_level(body, sep).into_iter().map(|p| p.trim().to_string()).collect();
        SchemeSpec::from_family(family, &params)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: String,
    pub spec: SchemeSpec,
}

impl CorpusEntry {
    pub fn new(spec: SchemeSpec) -> Self {
        CorpusEntry { id: spec.to_string(), spec }
    }
}

/// Points above which random Schurian schemes are not generated.
pub const RANDOM_SCHURIAN_MAX_POINTS: usize = 7;

/// The registered corpus: a fixed list of families plus `random` Schurian
/// schemes drawn from `seed`, capped at `max_points` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub seed: u64,
    pub random: usize,
    pub max_points: usize,
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus { seed: 0, random: 4, max_points: 24 }
    }
}

impl Corpus {
    pub fn entries(&self) -> Vec<CorpusEntry> {
        use SchemeSpec::*;
        let perm = |n: usize, cycles: &str| Permutation::from_cycles(n, cycles).expect("valid corpus permutation");
        let boxed = |s: &str| Box::new(s.parse::<SchemeSpec>().expect("valid corpus id"));

        let mut specs: Vec<SchemeSpec> = Vec::new();
        specs.extend((1..=24).map(Rank2));
        specs.extend((1..=5).map(Discrete));
        specs.extend((1..=12).map(ThinCyclic));
        specs.push(ThinSym(3));
        for name in ["Z2xZ2", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8", "D5", "A4", "Z3xZ3"] {
            specs.push(ThinGroup(name.to_string()));
        }
        specs.extend([
            Hamming { d: 2, q: 2 },
            Hamming { d: 3, q: 2 },
            Hamming { d: 2, q: 3 },
            Johnson { v: 4, k: 2 },
            Johnson { v: 5, k: 2 },
            Johnson { v: 6, k: 3 },
        ]);
        specs.extend([
            Schurian { n: 3, generators: vec![perm(3, "(0 1)")] },
            Schurian { n: 3, generators: vec![perm(3, "(0 1)"), perm(3, "(0 1 2)")] },
            Schurian { n: 4, generators: vec![perm(4, "(0 1 2 3)"), perm(4, "(1 3)")] },
            Schurian { n: 4, generators: vec![perm(4, "(0 1)(2 3)")] },
            Schurian { n: 5, generators: vec![perm(5, "(0 1 2)"), perm(5, "(3 4)")] },
            Schurian { n: 5, generators: vec![perm(5, "(0 1 2 3 4)"), perm(5, "(1 4)(2 3)")] },
            Schurian { n: 6, generators: vec![perm(6, "(0 1 2)(3 4 5)"), perm(6, "(0 3)(1 5)(2 4)")] },
            Schurian { n: 6, generators: vec![perm(6, "(0 1 2 3)"), perm(6, "(4 5)")] },
        ]);
        specs.extend([
            DirectSum(boxed("rank2(2)"), boxed("discrete(1)")),
            DirectSum(boxed("discrete(1)"), boxed("discrete(1)")),
            DirectSum(boxed("rank2(2)"), boxed("rank2(3)")),
            DirectSum(boxed("rank2(2)"), boxed("rank2(2)")),
            DirectSum(boxed("thin-cyclic(3)"), boxed("rank2(2)")),
            DirectSum(boxed("hamming(2,2)"), boxed("rank2(3)")),
            DirectSum(boxed("thin-sym(3)"), boxed("discrete(1)")),
            DirectSum(boxed("direct-sum(rank2(2),rank2(2))"), boxed("rank2(3)")),
            DirectSum(boxed("schurian(3;(0 1))"), boxed("rank2(2)")),
        ]);
        specs.extend(random_schurian(self.seed, self.random, self.max_points.min(RANDOM_SCHURIAN_MAX_POINTS)));

        specs.retain(|s| s.build().map(|scheme| scheme.size() <= self.max_points).unwrap_or(false));
        let mut seen = std::collections::HashSet::new();
        specs.into_iter().map(CorpusEntry::new).filter(|e| seen.insert(e.id.clone())).collect()
    }

    /// Entries whose spec satisfies `keep`.
    pub fn filtered(&self, keep: impl Fn(&CorpusEntry) -> bool) -> Vec<CorpusEntry> {
        self.entries().into_iter().filter(|e| keep(e)).collect()
    }
}

fn random_schurian(seed: u64, count: usize, max_points: usize) -> Vec<SchemeSpec> {
    if max_points < 3 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(3..=max_points);
            let gens = rng.random_range(1..=2);
            let generators = (0..gens)
                .map(|_| {
                    let mut image: Vec<usize> = (0..n).collect();
                    image.shuffle(&mut rng);
                    Permutation::new(image).expect("shuffled identity")
                })
                .collect();
            SchemeSpec::Schurian { n, generators }
        })
        .collect()
}
