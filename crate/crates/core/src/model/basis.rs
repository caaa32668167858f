use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    Gp,
    Gc,
    E,
    R,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Gp => "g_p",
            Level::Gc => "g_c",
            Level::E => "e",
            Level::R => "r",
        })
    }
}

/// Single-atom level set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LevelScheme {
    /// `(g_p, g_c, r)` after eliminating the intermediate level.
    Effective,
    /// `(g_p, g_c, e, r)`.
    Full,
}

impl LevelScheme {
    pub fn levels(self) -> &'static [Level] {
        match self {
            LevelScheme::Effective => &[Level::Gp, Level::Gc, Level::R],
            LevelScheme::Full => &[Level::Gp, Level::Gc, Level::E, Level::R],
        }
    }

    pub fn dim(self) -> usize {
        self.levels().len()
    }

    pub fn index(self, level: Level) -> Option<usize> {
        self.levels().iter().position(|&l| l == level)
    }
}

/// Ordering of a one- or two-atom product basis. The two-atom index is
/// `d * i1 + i2` (atom 1 major) with `d` the single-atom dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Basis {
    pub scheme: LevelScheme,
    pub atoms: usize,
}

impl Basis {
    pub const EFFECTIVE_SINGLE: Basis = Basis { scheme: LevelScheme::Effective, atoms: 1 };
    pub const EFFECTIVE_PAIR: Basis = Basis { scheme: LevelScheme::Effective, atoms: 2 };
    pub const FULL_PAIR: Basis = Basis { scheme: LevelScheme::Full, atoms: 2 };

    pub fn single_dim(&self) -> usize {
        self.scheme.dim()
    }

    pub fn dim(&self) -> usize {
        self.single_dim().pow(self.atoms as u32)
    }

    /// Index of the product state with `levels[k]` on atom `k + 1`.
    pub fn index(&self, levels: &[Level]) -> Option<usize> {
        if levels.len() != self.atoms {
            return None;
        }
        let d = self.single_dim();
        levels.iter().try_fold(0, |acc, &l| Some(acc * d + self.scheme.index(l)?))
    }

    /// Level occupied by `atom` (1-based) in basis state `index`.
    pub fn level_of(&self, index: usize, atom: usize) -> Level {
        assert!(atom >= 1 && atom <= self.atoms && index < self.dim());
        let d = self.single_dim();
        let digit = (index / d.pow((self.atoms - atom) as u32)) % d;
        self.scheme.levels()[digit]
    }

    pub fn label(&self, index: usize) -> String {
        (1..=self.atoms).map(|a| self.level_of(index, a).to_string()).collect::<Vec<_>>().join(",")
    }
}
