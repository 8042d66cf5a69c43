use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Color, PaletteRecord};

/// A cofinite set of colors, stored as its sorted finite complement.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Palette {
    complement: Box<[Color]>,
}

impl Palette {
    pub fn full() -> Palette {
        Palette::default()
    }

    pub fn excluding(colors: impl IntoIterator<Item = Color>) -> Palette {
        let mut v: Vec<Color> = colors.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Palette {
            complement: v.into_boxed_slice(),
        }
    }

    pub fn is_full(&self) -> bool {
        self.complement.is_empty()
    }

    pub fn contains(&self, c: Color) -> bool {
        self.complement.binary_search(&c).is_err()
    }

    pub fn complement(&self) -> &[Color] {
        &self.complement
    }
}

impl fmt::Display for Palette {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            return f.write_str("ω");
        }
        f.write_str("ω−{")?;
        for (i, c) in self.complement.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// The definition a palette came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiCase {
    /// ω − f[A] over the older points A.
    CircleCase1,
    /// Two older points of one color: ω.
    CircleCase2,
    /// ω − (f[B] ∪ N).
    LineCase1,
    /// (ω − N) ∪ {f(y)}.
    LineCase2,
    /// Palette rules disabled.
    Unconstrained,
}

/// Circle palette from the colors of the older points on it.
pub fn circle_palette(older: &[Color]) -> PaletteRecord {
    match older {
        [a, b] if a == b => PaletteRecord {
            palette: Palette::full(),
            case: PhiCase::CircleCase2,
            overfull: false,
        },
        _ => PaletteRecord {
            palette: Palette::excluding(older.iter().copied()),
            case: PhiCase::CircleCase1,
            overfull: older.len() > 2,
        },
    }
}

/// Line palette from the colors of older points and of this level's batch
/// points on it.
pub fn line_palette(older: &[Color], batch: &[Color]) -> PaletteRecord {
    match older {
        [y] if batch.contains(y) => PaletteRecord {
            palette: Palette::excluding(batch.iter().copied().filter(|c| c != y)),
            case: PhiCase::LineCase2,
            overfull: false,
        },
        _ => PaletteRecord {
            palette: Palette::excluding(older.iter().chain(batch).copied()),
            case: PhiCase::LineCase1,
            overfull: older.len() > 1,
        },
    }
}
