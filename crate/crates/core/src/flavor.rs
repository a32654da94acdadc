use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::forest::Forest;

/// Which of the two planar-forest operads is meant: the one whose second
/// product grafts on the root (`↘`) or on the leftmost leaf (`↗`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Searrow,
    Nearrow,
}

impl Flavor {
    pub const ALL: [Flavor; 2] = [Flavor::Searrow, Flavor::Nearrow];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Searrow => "searrow",
            Flavor::Nearrow => "nearrow",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Flavor::Searrow => "↘",
            Flavor::Nearrow => "↗",
        }
    }

    /// The flavor's grafting product on forests.
    pub fn arrow(self, f: &Forest, g: &Forest) -> Forest {
        match self {
            Flavor::Searrow => f.graft_root(g),
            Flavor::Nearrow => f.graft_left_leaf(g),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "searrow" => Ok(Flavor::Searrow),
            "nearrow" => Ok(Flavor::Nearrow),
            other => Err(Error::Unsupported(format!("unknown flavor {other:?}"))),
        }
    }
}
