//! Continuation of the two- and three-disk evaluations to real curvatures.
//! Signs `(-1)^n` become `e^{i pi n}` and factorials become gamma functions,
//! so the values are complex.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(ComplexValue { re, im })
        } else {
            Err(Error::Domain(format!("non-finite value {re} + {im} i")))
        }
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn arg(&self) -> f64 {
        self.im.atan2(self.re)
    }
}

/// `%.12g`-style formatting.
pub fn format_g(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // no negative zeros in output
        let re = if self.re == 0.0 { 0.0 } else { self.re };
        let im = if self.im == 0.0 { 0.0 } else { self.im };
        let sign = if im < 0.0 { '-' } else { '+' };
        write!(f, "{}{sign}{}i", format_g(re, 12), format_g(im.abs(), 12))
    }
}

/// `(sin pi x, cos pi x)`, exact at multiples of 1/2.
pub fn sincos_pi(x: f64) -> (f64, f64) {
    let twice = 2.0 * x;
    if twice.fract() == 0.0 && twice.abs() < 9.0e15 {
        return match (twice as i64).rem_euclid(4) {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        };
    }
    (std::f64::consts::PI * x.rem_euclid(2.0)).sin_cos()
}

fn phase(x: f64, magnitude: f64) -> Result<ComplexValue> {
    let (s, c) = sincos_pi(x);
    ComplexValue::new(magnitude * c, magnitude * s)
}

/// `(1 + x + y) e^{i pi (x + y)}`.
pub fn delta_c(x: f64, y: f64) -> Result<ComplexValue> {
    phase(x + y, 1.0 + x + y)
}

fn check_pole(argument: f64) -> Result<()> {
    if argument <= 0.0 && argument.fract() == 0.0 {
        Err(Error::Pole { argument })
    } else {
        Ok(())
    }
}

/// `e^{i pi (a+b+c)} G(a+1) G(b+1) G(c+1) G(a+b+c+2) / (G(a+b+1) G(b+c+1) G(c+a+1))`
/// through signed log-gamma.
pub fn theta_c(a: f64, b: f64, c: f64) -> Result<ComplexValue> {
    let num = [a + 1.0, b + 1.0, c + 1.0, a + b + c + 2.0];
    let den = [a + b + 1.0, b + c + 1.0, c + a + 1.0];
    let mut log = 0.0;
    let mut sign = 1.0;
    for (args, s) in [(&num[..], 1.0), (&den[..], -1.0)] {
        for &x in args {
            check_pole(x)?;
            let (lg, sg) = libm::lgamma_r(x);
            log += s * lg;
            sign *= sg as f64;
        }
    }
    phase(a + b + c, sign * log.exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnalyticFn {
    Delta,
    Theta,
}

impl AnalyticFn {
    pub fn arity(self) -> usize {
        match self {
            AnalyticFn::Delta => 2,
            AnalyticFn::Theta => 3,
        }
    }

    pub fn eval(self, args: &[f64]) -> Result<ComplexValue> {
        if args.len() != self.arity() {
            return Err(Error::Domain(format!(
                "{self:?} takes {} arguments, got {}",
                self.arity(),
                args.len()
            )));
        }
        match self {
            AnalyticFn::Delta => delta_c(args[0], args[1]),
            AnalyticFn::Theta => theta_c(args[0], args[1], args[2]),
        }
    }
}

impl FromStr for AnalyticFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(AnalyticFn::Delta),
            "theta" => Ok(AnalyticFn::Theta),
            _ => Err(Error::Parse(format!("unknown function {s:?}, expected delta or theta"))),
        }
    }
}

/// `slope * t + offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Affine {
    pub slope: f64,
    pub offset: f64,
}

impl Affine {
    pub fn at(&self, t: f64) -> f64 {
        self.slope * t + self.offset
    }
}

impl FromStr for Affine {
    type Err = Error;

    /// Sums of terms such as `2`, `x`, `-x`, `0.5x`, `3*x`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty coordinate".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            // split before a sign that is not part of an exponent
            if i > 0 && (ch == '+' || ch == '-') && !s[..i].ends_with(['e', 'E']) {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let bad = || Error::Parse(format!("cannot read {s:?} as an affine expression in x"));
        let mut out = Affine { slope: 0.0, offset: 0.0 };
        for term in terms {
            if let Some(coef) = term.strip_suffix('x') {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                out.slope += match coef {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    c => c.parse::<f64>().map_err(|_| bad())?,
                };
            } else {
                out.offset += term.parse::<f64>().map_err(|_| bad())?;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplePath {
    pub coords: Vec<Affine>,
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
}

impl SamplePath {
    pub fn new(coords: Vec<Affine>, t0: f64, t1: f64, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::Domain("steps must be positive".into()));
        }
        // also rejects NaN bounds
        if t0.partial_cmp(&t1) != Some(std::cmp::Ordering::Less) {
            return Err(Error::Domain(format!("empty range {t0}:{t1}")));
        }
        Ok(SamplePath { coords, t0, t1, steps })
    }

    /// Parses `"1,x,x"`, `"-3:7"` and a step count.
    pub fn parse(path: &str, range: &str, steps: usize) -> Result<Self> {
        let coords = path.split(',').map(str::parse).collect::<Result<Vec<Affine>>>()?;
        let (a, b) = range
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("range {range:?} is not t0:t1")))?;
        let num = |x: &str| {
            x.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad range bound {x:?}")))
        };
        SamplePath::new(coords, num(a)?, num(b)?, steps)
    }

    pub fn t(&self, k: usize) -> f64 {
        if k == self.steps {
            self.t1
        } else {
            self.t0 + (self.t1 - self.t0) * k as f64 / self.steps as f64
        }
    }
}

/// `steps + 1` evenly spaced samples including both ends, ordered by `t`.
pub fn sample(f: AnalyticFn, path: &SamplePath) -> Result<Vec<(f64, ComplexValue)>> {
    if path.coords.len() != f.arity() {
        return Err(Error::Domain(format!(
            "path has {} coordinates, {f:?} needs {}",
            path.coords.len(),
            f.arity()
        )));
    }
    (0..=path.steps)
        .into_par_iter()
        .map(|k| {
            let t = path.t(k);
            let args: Vec<f64> = path.coords.iter().map(|c| c.at(t)).collect();
            match f.eval(&args) {
                Ok(v) => Ok((t, v)),
                Err(Error::Pole { argument }) => Err(Error::PoleAt { t, argument }),
                Err(e) => Err(e),
            }
        })
        .collect()
}

pub fn samples_to_csv(samples: &[(f64, ComplexValue)]) -> String {
    let mut s = String::from("t,re,im\n");
    for (t, v) in samples {
        s.push_str(&format!("{},{},{}\n", format_g(*t, 12), format_g(v.re, 12), format_g(v.im, 12)));
    }
    s
}

/// Polyline of the samples in the complex plane, with the real and imaginary
/// axes drawn through the origin.
pub fn samples_to_svg(samples: &[(f64, ComplexValue)]) -> String {
    const SIZE: f64 = 600.0;
    let extent = samples
        .iter()
        .map(|(_, v)| v.re.abs().max(v.im.abs()))
        .fold(1.0f64, f64::max)
        * 1.05;
    let map = |v: &ComplexValue| {
        (
            SIZE / 2.0 + v.re / extent * SIZE / 2.0,
            SIZE / 2.0 - v.im / extent * SIZE / 2.0,
        )
    };
    let points: Vec<String> = samples
        .iter()
        .map(|(_, v)| {
            let (x, y) = map(v);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let mid = SIZE / 2.0;
    format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {s} {s}" width="{s}" height="{s}">"#,
            "\n",
            r#"<rect width="100%" height="100%" fill="white"/>"#,
            "\n",
            r#"<line x1="0" y1="{m}" x2="{s}" y2="{m}" stroke="gray" stroke-width="0.5"/>"#,
            "\n",
            r#"<line x1="{m}" y1="0" x2="{m}" y2="{s}" stroke="gray" stroke-width="0.5"/>"#,
            "\n",
            r#"<polyline fill="none" stroke="black" stroke-width="1" points="{p}"/>"#,
            "\n</svg>\n"
        ),
        s = SIZE,
        m = mid,
        p = points.join(" ")
    )
}
