//! Shipped complete-intersection examples, all assumed quasismooth.

use super::{CIData, Matching};
use crate::arith::{rat, Rational};

#[derive(Clone, Copy, Debug)]
pub struct CiFixture {
    pub name: &'static str,
    pub weights: &'static [u64],
    pub degrees: &'static [u64],
    /// One of the four Calabi-Yau threefolds with terminal singularities.
    pub cy_threefold: bool,
    pub terminal: bool,
}

impl CiFixture {
    pub fn data(&self) -> CIData {
        CIData::from_slices(self.weights, self.degrees, true).expect("fixture data is valid")
    }
}

pub const FIXTURES: &[CiFixture] = &[
    CiFixture {
        name: "X5 in P^4",
        weights: &[1, 1, 1, 1, 1],
        degrees: &[5],
        cy_threefold: true,
        terminal: true,
    },
    CiFixture {
        name: "X6 in P(1,1,1,1,2)",
        weights: &[1, 1, 1, 1, 2],
        degrees: &[6],
        cy_threefold: true,
        terminal: true,
    },
    CiFixture {
        name: "X8 in P(1,1,1,1,4)",
        weights: &[1, 1, 1, 1, 4],
        degrees: &[8],
        cy_threefold: true,
        terminal: true,
    },
    CiFixture {
        name: "X10 in P(1,1,1,2,5)",
        weights: &[1, 1, 1, 2, 5],
        degrees: &[10],
        cy_threefold: true,
        terminal: true,
    },
    CiFixture {
        name: "X7 in P(1,1,1,1,1,2)",
        weights: &[1, 1, 1, 1, 1, 2],
        degrees: &[7],
        cy_threefold: false,
        terminal: true,
    },
    CiFixture {
        name: "X3 in P(1,1,1,2)",
        weights: &[1, 1, 1, 2],
        degrees: &[3],
        cy_threefold: false,
        terminal: false,
    },
    CiFixture {
        name: "X4 in P^4",
        weights: &[1, 1, 1, 1, 1],
        degrees: &[4],
        cy_threefold: false,
        terminal: true,
    },
    CiFixture {
        name: "X2 in P^3",
        weights: &[1, 1, 1, 1],
        degrees: &[2],
        cy_threefold: false,
        terminal: true,
    },
];

pub fn fixture(name: &str) -> Option<&'static CiFixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// Sectors whose locus meets `X`, with hand-made reorderings.
pub fn local_matchings() -> [(&'static str, Rational, Matching); 2] {
    [
        (
            "X3 in P(1,1,1,2)",
            rat(1, 2),
            Matching {
                weight_order: [0, 3, 1, 2].to_vec(),
                degree_order: [0].to_vec(),
                paired: 1,
            },
        ),
        (
            "X7 in P(1,1,1,1,1,2)",
            rat(1, 2),
            Matching {
                weight_order: [0, 5, 1, 2, 3, 4].to_vec(),
                degree_order: [0].to_vec(),
                paired: 1,
            },
        ),
    ]
}
