//! Figure presets: named parameter grids regenerating the data behind each
//! of the five standard plots.
//!
//! | preset | command  | grids                                                        |
//! |--------|----------|--------------------------------------------------------------|
//! | fig1   | optimize | single qubit; s ∈ {0.5,1,2,3}; ω_c log 0.1→10 (50 pts)       |
//! | fig2   | optimize | single qubit; s log 0.1→10 (100 pts); ω_c = 1                 |
//! | fig3   | optimize | product/Bell independent; s log 0.1→10 (100 pts); ω_c = 1     |
//! | fig3   | qfi      | product/Bell independent; s = 1; ω_c = 0.8; t 0.04→8 (200)    |
//! | fig4   | optimize | all four two-qubit schemes; s linear 0.5→3 (101 pts); ω_c = 1 |
//! | fig4   | qfi      | all four two-qubit schemes; s ∈ {1,2}; ω_c = 1; t 0.02→4 (200)|
//! | fig5   | optimize | Werner both baths; p linear 0.1→1 (10 pts); s ∈ {0.5,1,3}     |

use crate::cli::grid::GridSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl Figure {
    pub fn parse(text: &str) -> Result<Figure> {
        match text {
            "fig1" => Ok(Figure::Fig1),
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            "fig4" => Ok(Figure::Fig4),
            "fig5" => Ok(Figure::Fig5),
            other => Err(Error::Config(format!(
                "unknown figure preset '{other}' (expected fig1..fig5)"
            ))),
        }
    }
}

/// Parameter grids selected by a preset.
#[derive(Debug, Clone)]
pub struct PresetGrids {
    pub probes: Vec<&'static str>,
    pub s: Vec<f64>,
    pub omega_c: Vec<f64>,
    pub t: Option<Vec<f64>>,
    pub p: Vec<f64>,
    pub n: Vec<u32>,
}

fn log_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    GridSpec {
        start,
        stop,
        count,
        log: true,
    }
    .values()
}

fn lin_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    GridSpec {
        start,
        stop,
        count,
        log: false,
    }
    .values()
}

const TWO_QUBIT_SCHEMES: [&str; 4] = [
    "product-independent",
    "bell-independent",
    "product-common",
    "bell-common",
];

/// Grids for `optimize --figure`.
pub fn optimize_preset(figure: Figure) -> PresetGrids {
    match figure {
        Figure::Fig1 => PresetGrids {
            probes: vec!["single"],
            s: vec![0.5, 1.0, 2.0, 3.0],
            omega_c: log_grid(0.1, 10.0, 50),
            t: None,
            p: vec![],
            n: vec![],
        },
        Figure::Fig2 => PresetGrids {
            probes: vec!["single"],
            s: log_grid(0.1, 10.0, 100),
            omega_c: vec![1.0],
            t: None,
            p: vec![],
            n: vec![],
        },
        Figure::Fig3 => PresetGrids {
            probes: vec!["product-independent", "bell-independent"],
            s: log_grid(0.1, 10.0, 100),
            omega_c: vec![1.0],
            t: None,
            p: vec![],
            n: vec![],
        },
        Figure::Fig4 => PresetGrids {
            probes: TWO_QUBIT_SCHEMES.to_vec(),
            s: lin_grid(0.5, 3.0, 101),
            omega_c: vec![1.0],
            t: None,
            p: vec![],
            n: vec![],
        },
        Figure::Fig5 => PresetGrids {
            probes: vec!["werner-independent", "werner-common"],
            s: vec![0.5, 1.0, 3.0],
            omega_c: vec![1.0],
            t: None,
            p: lin_grid(0.1, 1.0, 10),
            n: vec![],
        },
    }
}

/// Grids for `qfi --figure` (time-resolved information curves).
pub fn qfi_preset(figure: Figure) -> Result<PresetGrids> {
    match figure {
        Figure::Fig3 => Ok(PresetGrids {
            probes: vec!["product-independent", "bell-independent"],
            s: vec![1.0],
            omega_c: vec![0.8],
            t: Some(lin_grid(0.04, 8.0, 200)),
            p: vec![],
            n: vec![],
        }),
        Figure::Fig4 => Ok(PresetGrids {
            probes: TWO_QUBIT_SCHEMES.to_vec(),
            s: vec![1.0, 2.0],
            omega_c: vec![1.0],
            t: Some(lin_grid(0.02, 4.0, 200)),
            p: vec![],
            n: vec![],
        }),
        other => Err(Error::Config(format!(
            "{other:?} has no time-resolved preset; use the optimize subcommand"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reject() {
        assert_eq!(Figure::parse("fig2").unwrap(), Figure::Fig2);
        assert!(Figure::parse("fig6").is_err());
        assert!(Figure::parse("").is_err());
    }

    #[test]
    fn preset_shapes() {
        let fig2 = optimize_preset(Figure::Fig2);
        assert_eq!(fig2.s.len(), 100);
        assert!((fig2.s[0] - 0.1).abs() < 1e-12);
        assert!((fig2.s[99] - 10.0).abs() < 1e-9);
        let fig4 = optimize_preset(Figure::Fig4);
        assert_eq!(fig4.probes.len(), 4);
        assert_eq!(fig4.s.len(), 101);
        assert!(qfi_preset(Figure::Fig3).is_ok());
        assert!(qfi_preset(Figure::Fig2).is_err());
    }
}
