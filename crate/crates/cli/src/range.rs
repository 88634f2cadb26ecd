use std::fmt;
use std::str::FromStr;

/// An inclusive sweep `lo:hi:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Sweep {
    /// The points lo, lo+step, …; the last one may overshoot `hi` by under half a step.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 0.5).floor() as usize + 1;
        (0..count)
            .map(|k| {
                let x = self.lo + k as f64 * self.step;
                if (x - self.hi).abs() <= 1e-9 * self.step {
                    self.hi
                } else {
                    x
                }
            })
            .collect()
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts[..] else {
            return Err(format!("expected lo:hi:step, got {s:?}"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("{t:?} is not a number"));
        let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
        if !(lo.is_finite() && hi.is_finite() && step.is_finite()) {
            return Err("range bounds must be finite".into());
        }
        if step <= 0.0 {
            return Err("range step must be positive".into());
        }
        if hi <= lo {
            return Err(format!("empty range {s:?}: need lo < hi"));
        }
        if (hi - lo) / step > 1e6 {
            return Err("range has more than a million points".into());
        }
        Ok(Self { lo, hi, step })
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.step)
    }
}

/// A comma-separated list of positive numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct NumberList(pub Vec<f64>);

impl FromStr for NumberList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let values = s
            .split(',')
            .map(|t| {
                let v = t.trim().parse::<f64>().map_err(|_| format!("{t:?} is not a number"))?;
                if v > 0.0 && v.is_finite() {
                    Ok(v)
                } else {
                    Err(format!("{v} must be positive"))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err("empty list".into());
        }
        Ok(Self(values))
    }
}

impl fmt::Display for NumberList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inclusive_points() {
        let s: Sweep = "0:2:0.05".parse().unwrap();
        let p = s.points();
        assert_eq!(p.len(), 41);
        assert_eq!(p[0], 0.0);
        assert_eq!(*p.last().unwrap(), 2.0);
        assert_eq!("0:0.015:0.001".parse::<Sweep>().unwrap().points().len(), 16);
        // hi is reached within half a step
        assert_eq!("0:1.04:0.1".parse::<Sweep>().unwrap().points().len(), 11);
        assert_eq!("0:1.06:0.1".parse::<Sweep>().unwrap().points().len(), 12);
    }

    #[test]
    fn rejects_bad_ranges() {
        for bad in ["0:0:1", "1:0:0.1", "0:1:0", "0:1:-1", "0:1", "a:1:0.1", "0:inf:1"] {
            assert!(bad.parse::<Sweep>().is_err(), "{bad}");
        }
    }

    #[test]
    fn number_lists() {
        assert_eq!("50, 200,1000".parse::<NumberList>().unwrap().0, vec![50.0, 200.0, 1000.0]);
        assert!("".parse::<NumberList>().is_err());
        assert!("5,-1".parse::<NumberList>().is_err());
        assert_eq!(NumberList(vec![50.0, 1000.0]).to_string(), "50,1000");
    }
}
