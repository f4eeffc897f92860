use std::fmt;

use serde::{Deserialize, Serialize};

/// Index of a color in the owning operad spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Color(pub u16);

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// A finite sequence of colors: an object of the category of operators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColorWord(pub Vec<Color>);

impl ColorWord {
    pub fn new(colors: Vec<Color>) -> Self {
        Self(colors)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn uniform(c: Color, n: usize) -> Self {
        Self(vec![c; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }

    pub fn concat(&self, other: &ColorWord) -> ColorWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ColorWord(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Color> {
        self.0.iter()
    }
}

impl From<Vec<Color>> for ColorWord {
    fn from(v: Vec<Color>) -> Self {
        ColorWord(v)
    }
}

impl FromIterator<Color> for ColorWord {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        ColorWord(iter.into_iter().collect())
    }
}

impl std::ops::Index<usize> for ColorWord {
    type Output = Color;
    fn index(&self, i: usize) -> &Color {
        &self.0[i]
    }
}

/// Planar, symmetric or braided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Planar,
    Symmetric,
    Braided,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Planar => "planar",
            Flavor::Symmetric => "symmetric",
            Flavor::Braided => "braided",
        })
    }
}
