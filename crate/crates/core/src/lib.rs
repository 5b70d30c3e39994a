//! Monochromatic sumsets `X + X` in Abelian groups.
//!
//! Groups are finite direct sums of `Z/m` and `Z` factors, each embedded in
//! `Q[sqrt 2]/Z` so that element values of different factors can be compared.
//! On top of that sit explicit colourings, an exhaustive witness search with
//! certificates, and constructive procedures that build witnesses from
//! independent sequences.
//!
//! ```
//! use sumset_ramsey::{verify_witness, Coloring, Group};
//!
//! let g: Group = "Z/4 Z/4 Z".parse().unwrap();
//! let xs = [g.parse_element("1,0,1").unwrap(), g.parse_element("3,2,1").unwrap()];
//! let (mono, colour) = verify_witness(&xs, &Coloring::Support).unwrap();
//! assert!(mono);
//! assert_eq!(colour.unwrap().to_string(), "Seq[(1/2,0),(0,2)]");
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

pub mod cli;
pub mod coloring;
pub mod constructive;
pub mod error;
pub mod fragment;
pub mod group;
pub mod gvalue;
pub mod limits;
pub mod search;

/// Order of a group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

pub use coloring::{
    finite_2g_coloring, induced_tuple_coloring, injective_coloring, leader_russell_pattern, load_coloring,
    random_table, save_coloring, support_color, Color, Coloring, InducedMode, Palette, TupleColor, TupleColoring,
};
pub use constructive::Construction;
pub use error::{Error, ResourceExceeded};
pub use fragment::{
    double_image, enumerate_fragment, four_torsion, solve_double, solve_quadruple, sumset, two_torsion,
    SubgroupEnumeration, SubgroupLabel, DEFAULT_FRAGMENT_CAP,
};
pub use group::{Element, Factor, Group, GroupSpec};
pub use gvalue::GValue;
pub use limits::{Limits, DEFAULT_NODE_LIMIT, DEFAULT_TIME_LIMIT};
pub use search::{
    certify_class, find_witness, minimal_fragment_number, sweep_bounds, sweep_powers, verify_witness, Certificate,
    ColoringRule, Domain, Family, FamilyMember, MinimalOutcome, Outcome, Strategy, Witness,
};
