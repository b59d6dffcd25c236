//! Parser for the `start:stop:count[:log]` grid mini-format.

use crate::error::{Error, Result};

/// A one-dimensional sampling grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl GridSpec {
    /// Parses `start:stop:count` or `start:stop:count:log`.
    pub fn parse(text: &str) -> Result<GridSpec> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 && parts.len() != 4 {
            return Err(Error::Config(format!(
                "grid must be start:stop:count[:log], got '{text}'"
            )));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| Error::Config(format!("bad grid start '{}'", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| Error::Config(format!("bad grid stop '{}'", parts[1])))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| Error::Config(format!("bad grid count '{}'", parts[2])))?;
        let log = match parts.get(3) {
            None => false,
            Some(&"log") => true,
            Some(other) => {
                return Err(Error::Config(format!(
                    "grid scale must be 'log' if present, got '{other}'"
                )))
            }
        };
        if !start.is_finite() || !stop.is_finite() {
            return Err(Error::Config(format!("grid endpoints must be finite in '{text}'")));
        }
        if count == 0 {
            return Err(Error::Config("grid count must be at least 1".into()));
        }
        if log && (start <= 0.0 || stop <= 0.0) {
            return Err(Error::Config(format!(
                "log grids need positive endpoints, got [{start}, {stop}]"
            )));
        }
        Ok(GridSpec {
            start,
            stop,
            count,
            log,
        })
    }

    /// Materializes the grid values.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let n = self.count;
        (0..n)
            .map(|i| {
                let frac = i as f64 / (n - 1) as f64;
                if self.log {
                    self.start * (self.stop / self.start).powf(frac)
                } else {
                    self.start + (self.stop - self.start) * frac
                }
            })
            .collect()
    }
}

/// Parses a comma-separated list of floats, e.g. `0.5,1,3`.
pub fn parse_float_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            let trimmed = part.trim();
            trimmed
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Config(format!("bad number '{trimmed}'")))
        })
        .collect()
}

/// Parses a comma-separated list of positive integers, e.g. `1,2,6`.
pub fn parse_int_list(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|part| {
            let trimmed = part.trim();
            trimmed
                .parse::<u32>()
                .map_err(|_| Error::Config(format!("bad integer '{trimmed}'")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn linear_grid() {
        let g = GridSpec::parse("0:10:5").unwrap();
        assert_eq!(g.values(), vec![0.0, 2.5, 5.0, 7.5, 10.0]);
    }

    #[test]
    fn log_grid() {
        let g = GridSpec::parse("0.1:10:3:log").unwrap();
        let v = g.values();
        assert!((v[0] - 0.1).abs() < 1e-12);
        assert!((v[1] - 1.0).abs() < 1e-12);
        assert!((v[2] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn singleton_grid() {
        assert_eq!(GridSpec::parse("2.5:9:1").unwrap().values(), vec![2.5]);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "", "1:2", "1:2:3:4:5", "a:2:3", "1:b:3", "1:2:c", "1:2:0", "1:2:3:lin",
            "-1:2:3:log", "inf:2:3", "nan:2:3",
        ] {
            assert!(GridSpec::parse(bad).is_err(), "accepted '{bad}'");
        }
    }

    #[test]
    fn float_and_int_lists() {
        assert_eq!(parse_float_list("0.5, 1,3").unwrap(), vec![0.5, 1.0, 3.0]);
        assert!(parse_float_list("0.5,,1").is_err());
        assert!(parse_float_list("inf").is_err());
        assert_eq!(parse_int_list("1,2,6").unwrap(), vec![1, 2, 6]);
        assert!(parse_int_list("1,-2").is_err());
    }

    proptest! {
        #[test]
        fn parser_never_panics(text in ".{0,64}") {
            let _ = GridSpec::parse(&text);
            let _ = parse_float_list(&text);
            let _ = parse_int_list(&text);
        }

        #[test]
        fn accepted_grids_have_exact_count_and_finite_values(
            start in -1e6f64..1e6,
            stop in -1e6f64..1e6,
            count in 1usize..300,
            log in proptest::bool::ANY,
        ) {
            let text = if log {
                format!("{start}:{stop}:{count}:log")
            } else {
                format!("{start}:{stop}:{count}")
            };
            if let Ok(g) = GridSpec::parse(&text) {
                let v = g.values();
                prop_assert_eq!(v.len(), count);
                prop_assert!(v.iter().all(|x| x.is_finite()));
            }
        }
    }
}
