//! Sweep arguments: a single number, `lo..hi:steps` (linear) or
//! `lo..hi:stepsL` (logarithmic).

use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    points: Vec<f64>,
}

impl Sweep {
    pub fn single(x: f64) -> Self {
        Self { points: vec![x] }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn is_range(&self) -> bool {
        self.points.len() > 1
    }
}

fn number(s: &str) -> Result<f64, String> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let Some((lo, rest)) = s.split_once("..") else {
            return number(s).map(Sweep::single);
        };
        let (hi, steps) = rest
            .split_once(':')
            .ok_or_else(|| format!("range `{s}` needs a step count: lo..hi:steps"))?;
        let (steps, log) = match steps.strip_suffix('L') {
            Some(n) => (n, true),
            None => (steps, false),
        };
        let lo = number(lo)?;
        let hi = number(hi)?;
        let n: usize = steps
            .trim()
            .parse()
            .map_err(|_| format!("step count `{steps}` is not a positive integer"))?;
        if n < 2 {
            return Err(format!("range `{s}` needs at least 2 steps"));
        }
        if log && !(lo > 0.0 && hi > 0.0) {
            return Err(format!("log range `{s}` needs positive endpoints"));
        }
        let frac = |i: usize| i as f64 / (n - 1) as f64;
        let points = (0..n)
            .map(|i| {
                if i == 0 {
                    lo
                } else if i == n - 1 {
                    hi
                } else if log {
                    (lo.ln() + (hi.ln() - lo.ln()) * frac(i)).exp()
                } else {
                    lo + (hi - lo) * frac(i)
                }
            })
            .collect();
        Ok(Sweep { points })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_value() {
        assert_eq!("1e-9".parse::<Sweep>().unwrap().points(), &[1e-9]);
        assert_eq!("-2.5".parse::<Sweep>().unwrap().points(), &[-2.5]);
    }

    #[test]
    fn linear_and_log_ranges() {
        let lin: Sweep = "1..2:5".parse().unwrap();
        assert_eq!(lin.points(), &[1.0, 1.25, 1.5, 1.75, 2.0]);
        let log: Sweep = "1e-9..1e-7:3L".parse().unwrap();
        assert_eq!(log.points().len(), 3);
        assert!((log.points()[1] - 1e-8).abs() < 1e-20);
        assert_eq!(log.points()[0], 1e-9);
        assert_eq!(log.points()[2], 1e-7);
    }

    #[test]
    fn malformed_ranges() {
        for bad in [
            "", "x", "1..2", "1..2:1", "1..2:x", "0..1:3L", "1..nan:3", "1..2:-3",
        ] {
            assert!(bad.parse::<Sweep>().is_err(), "{bad}");
        }
    }
}
