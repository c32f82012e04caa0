use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::interval::{enclose_quad, Interval};
use super::markoff::{x_values, y_values};
use crate::exact::{int, rat, BigRational, QuadExt};
use crate::geometry::SpaceCase;
use crate::{Error, Result};

/// The square of a spectrum value: rational or a + b√d with d > 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactSquare {
    Rational(BigRational),
    Quad(QuadExt),
}

impl ExactSquare {
    pub fn enclose(&self, p: u32) -> Interval {
        match self {
            ExactSquare::Rational(r) => Interval::point(r.clone()),
            ExactSquare::Quad(q) => enclose_quad(q, p).expect("real field"),
        }
    }

    pub fn as_quad(&self) -> Option<&QuadExt> {
        match self {
            ExactSquare::Quad(q) => Some(q),
            ExactSquare::Rational(_) => None,
        }
    }

    /// Exact sign of self − other when decidable in one field; otherwise
    /// by refining enclosures (distinct algebraic numbers separate).
    pub fn cmp_exact(&self, o: &ExactSquare) -> Ordering {
        use ExactSquare::*;
        match (self, o) {
            (Rational(a), Rational(b)) => a.cmp(b),
            (Quad(q), Rational(r)) => q.add_rational(&-r).signum().expect("real"),
            (Rational(r), Quad(q)) => q.add_rational(&-r).signum().expect("real").reverse(),
            (Quad(a), Quad(b)) if a.d() == b.d() => a.cmp_real(b).expect("real"),
            (Quad(a), Quad(b)) => {
                let mut p = 64;
                loop {
                    if let Some(c) = enclose_quad(a, p).unwrap().try_cmp(&enclose_quad(b, p).unwrap()) {
                        return c;
                    }
                    p *= 2;
                    assert!(p <= 1 << 16, "values in distinct fields failed to separate");
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.cmp_exact(&ExactSquare::Rational(BigRational::zero())) == Ordering::Greater
    }
}

impl fmt::Display for ExactSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactSquare::Rational(r) => write!(f, "{r}"),
            ExactSquare::Quad(q) => write!(f, "{q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generator {
    /// √(4 − 1/x²) on S¹_I or √(2 − 1/(2x²)) on S²_I.
    MarkoffX { x: u64 },
    /// √(4 − 2/y²) on S¹_I.
    MarkoffY { y: u64 },
    Sporadic { form: &'static str },
    Cited { role: Role, printed: &'static str },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Minimum,
    LimitPoint,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::MarkoffX { x } => write!(f, "x={x}"),
            Generator::MarkoffY { y } => write!(f, "y={y}"),
            Generator::Sporadic { form } => write!(f, "sporadic {form}"),
            Generator::Cited { role: Role::Minimum, printed } => write!(f, "cited minimum {printed}"),
            Generator::Cited { role: Role::LimitPoint, printed } => write!(f, "cited limit point {printed}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumValue {
    pub case: SpaceCase,
    pub square: ExactSquare,
    pub generator: Generator,
}

impl SpectrumValue {
    pub fn enclose(&self, p: u32) -> Interval {
        self.square.enclose(p).sqrt(p).expect("positive square")
    }

    /// `sig` significant digits, refining until both ends agree.
    pub fn decimal(&self, sig: usize) -> String {
        decimal_sqrt(&self.square, sig)
    }

    /// Closed form of the value.
    pub fn exact_form(&self) -> String {
        match &self.generator {
            Generator::MarkoffX { x } if self.case == SpaceCase::S1I => format!("sqrt(4-1/{})", x * x),
            Generator::MarkoffX { x } => format!("sqrt(2-1/{})", 2 * x * x),
            Generator::MarkoffY { y } => format!("sqrt(4-2/{})", y * y),
            Generator::Sporadic { form } => form.to_string(),
            Generator::Cited { printed, .. } => printed.to_string(),
        }
    }
}

pub fn decimal_sqrt(square: &ExactSquare, sig: usize) -> String {
    let mut p = (sig as u32) * 4 + 32;
    loop {
        let v = square.enclose(p).sqrt(p).expect("positive");
        if let Some(s) = v.decimal(sig) {
            return s;
        }
        p *= 2;
        if p > 1 << 14 {
            return super::interval::to_significant(&v.mid(), sig);
        }
    }
}

/// A boundary constant of a spectrum quoted from the literature: the value
/// is radicand^(1/root), its square is stored separately and checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CitedConstant {
    pub case: SpaceCase,
    pub role: Role,
    /// The expression as printed, digit grouping included.
    pub printed: &'static str,
    pub radicand: ExactSquare,
    pub root: u32,
    pub square: ExactSquare,
    pub note: &'static str,
}

fn q(d: i64, a: BigRational, b: BigRational) -> ExactSquare {
    ExactSquare::Quad(QuadExt::new(d, a, b).expect("valid field"))
}

fn r(n: i64, d: i64) -> ExactSquare {
    ExactSquare::Rational(rat(n, d))
}

impl CitedConstant {
    /// square^(root/2) = radicand exactly, and square > 0.
    pub fn verify(&self) -> Result<()> {
        let lifted = match (self.root, &self.square) {
            (2, s) => s.clone(),
            (4, ExactSquare::Rational(s)) => ExactSquare::Rational(s * s),
            (4, ExactSquare::Quad(s)) => {
                let t = s.checked_mul(s)?;
                match t.as_rational() {
                    Some(x) => ExactSquare::Rational(x.clone()),
                    None => ExactSquare::Quad(t),
                }
            }
            _ => return Err(Error::Unsupported(format!("root {}", self.root))),
        };
        if lifted != self.radicand || !self.square.is_positive() {
            return Err(Error::Invariant(format!("{}: ({})^({}/2) = {lifted} ≠ {}", self.printed, self.square, self.root, self.radicand)));
        }
        Ok(())
    }

    pub fn value(&self) -> SpectrumValue {
        SpectrumValue {
            case: self.case,
            square: self.square.clone(),
            generator: Generator::Cited { role: self.role, printed: self.printed },
        }
    }

    pub fn decimal(&self, sig: usize) -> String {
        decimal_sqrt(&self.square, sig)
    }
}

/// The parsed reading of the printed digit group "115 77720".
pub const S2II_LIMIT_COEFF: i64 = 11_577_720;

pub fn sporadic_s2i() -> ExactSquare {
    q(41, int(0), rat(3, 10))
}

pub fn cited_constants(case: SpaceCase) -> Vec<CitedConstant> {
    use Role::*;
    let c = |role, printed, radicand, root, square, note| CitedConstant { case, role, printed, radicand, root, square, note };
    match case {
        SpaceCase::S1I => vec![
            c(Minimum, "sqrt(2)", r(2, 1), 2, r(2, 1), "y = 1 in sqrt(4-2/y^2)"),
            c(LimitPoint, "2", r(4, 1), 2, r(4, 1), "smallest accumulation point"),
        ],
        SpaceCase::S1II => vec![
            c(Minimum, "1", r(1, 1), 2, r(1, 1), "S1_I spectrum scaled by 1/sqrt(2)"),
            c(LimitPoint, "sqrt(2)", r(2, 1), 2, r(2, 1), "S1_I spectrum scaled by 1/sqrt(2)"),
        ],
        SpaceCase::S1III => vec![
            c(Minimum, "sqrt(5/2)", r(5, 2), 2, r(5, 2), "Hurwitz constant sqrt(5) scaled by 1/sqrt(2)"),
            c(LimitPoint, "3/sqrt(2)", r(9, 2), 2, r(9, 2), "classical first limit point 3 scaled by 1/sqrt(2)"),
        ],
        SpaceCase::S2I => vec![
            c(Minimum, "sqrt(3/2)", r(3, 2), 2, r(3, 2), "x = 1 in sqrt(2-1/(2x^2))"),
            c(LimitPoint, "sqrt(2)", r(2, 1), 2, r(2, 1), "smallest limit point"),
            c(Minimum, "sqrt((3/10)sqrt(41))", sporadic_s2i(), 2, sporadic_s2i(), "sporadic discrete value"),
        ],
        SpaceCase::S2II => {
            let lim = q(47, rat(4 * 82_662_667, 405_186_721), rat(4 * S2II_LIMIT_COEFF, 405_186_721));
            vec![
                c(Minimum, "1", r(1, 1), 2, r(1, 1), "Hurwitz bound"),
                c(
                    LimitPoint,
                    "(4(82 662 667 + 115 77720 sqrt(47))/405 186 721)^(1/2)",
                    lim.clone(),
                    2,
                    lim,
                    "digit group 115 77720 read as 11577720",
                ),
            ]
        }
        SpaceCase::S2III => vec![
            c(Minimum, "(13/4)^(1/4)", r(13, 4), 4, q(13, int(0), rat(1, 2)), "square is sqrt(13)/2"),
            c(
                LimitPoint,
                "((14 + 8 sqrt(3))/13)^(1/2)",
                q(3, rat(14, 13), rat(8, 13)),
                2,
                q(3, rat(14, 13), rat(8, 13)),
                "smallest limit point",
            ),
        ],
    }
}

/// Initial discrete part: the Markoff-type family for S¹_I and S²_I, the
/// cited boundary constants otherwise. Sorted ascending by exact squares.
pub fn discrete_spectrum(case: SpaceCase, bound: u64) -> Result<Vec<SpectrumValue>> {
    match generated_family(case, bound) {
        Err(Error::Unsupported(_)) => {
            let mut v: Vec<SpectrumValue> = cited_constants(case).iter().map(CitedConstant::value).collect();
            v.sort_by(|a, b| a.square.cmp_exact(&b.square));
            Ok(v)
        }
        r => r,
    }
}

/// Values generated from solutions with all components ≤ bound.
pub fn generated_family(case: SpaceCase, bound: u64) -> Result<Vec<SpectrumValue>> {
    let mut v = match case {
        SpaceCase::S1I => {
            let mut v: Vec<SpectrumValue> = x_values(bound)
                .into_iter()
                .map(|x| SpectrumValue {
                    case,
                    square: ExactSquare::Rational(int(4) - BigRational::new(1.into(), (x as u128 * x as u128).into())),
                    generator: Generator::MarkoffX { x },
                })
                .collect();
            v.extend(y_values(bound).into_iter().map(|y| SpectrumValue {
                case,
                square: ExactSquare::Rational(int(4) - BigRational::new(2.into(), (y as u128 * y as u128).into())),
                generator: Generator::MarkoffY { y },
            }));
            v
        }
        SpaceCase::S2I => {
            let mut v: Vec<SpectrumValue> = x_values(bound)
                .into_iter()
                .map(|x| SpectrumValue {
                    case,
                    square: ExactSquare::Rational(int(2) - BigRational::new(1.into(), (2 * x as u128 * x as u128).into())),
                    generator: Generator::MarkoffX { x },
                })
                .collect();
            v.push(SpectrumValue { case, square: sporadic_s2i(), generator: Generator::Sporadic { form: "sqrt((3/10)sqrt(41))" } });
            v
        }
        _ => return Err(Error::Unsupported(format!("{case}: only cited constants available"))),
    };
    v.sort_by(|a, b| a.square.cmp_exact(&b.square));
    v.dedup_by(|a, b| a.square == b.square);
    Ok(v)
}

/// The supremum of the family: 4 for S¹_I, 2 for S²_I (squares).
pub fn family_limit_square(case: SpaceCase) -> Option<BigRational> {
    match case {
        SpaceCase::S1I => Some(int(4)),
        SpaceCase::S2I => Some(int(2)),
        _ => None,
    }
}

/// CSV rows: value², value ≈ decimal(30), generator, case.
pub fn spectrum_csv(values: &[SpectrumValue]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["value_squared", "value_approx", "generator", "case"]).unwrap();
    for v in values {
        let g = match v.generator {
            Generator::MarkoffX { .. } | Generator::MarkoffY { .. } => format!("{} {}", v.generator, v.exact_form()),
            _ => v.generator.to_string(),
        };
        w.write_record([v.square.to_string(), v.decimal(30), g, v.case.name().to_string()]).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// Enclosure check used by tests: √(square) lies strictly below the limit.
pub fn below_limit(v: &SpectrumValue) -> bool {
    match family_limit_square(v.case) {
        Some(l) => v.square.cmp_exact(&ExactSquare::Rational(l)) == Ordering::Less,
        None => true,
    }
}
