use std::sync::Arc;

use clap::Args;
use serde::Serialize;
use simplex_gauss::exactnum::expr::{parse_int_list, parse_interval, parse_poly};
use simplex_gauss::exactnum::{fmt_rational, parse_rational, NFElement, NumberField, Rational};
use simplex_gauss::projective::ProjPoint;
use simplex_gauss::{Error, Result};

/// Field options shared by every command that reads coordinates.
#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Minimal polynomial, ascending integer coefficients, e.g. "-1,3,3,1".
    #[arg(long, allow_hyphen_values = true)]
    pub minpoly: Option<String>,
    /// Isolating interval "lo,hi" of the chosen root.
    #[arg(long, allow_hyphen_values = true)]
    pub root_interval: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldInfo {
    pub minpoly: Vec<String>,
    pub root_interval: [String; 2],
}

impl FieldArgs {
    pub fn field(&self) -> Result<Option<Arc<NumberField>>> {
        match (&self.minpoly, &self.root_interval) {
            (None, None) => Ok(None),
            (Some(m), Some(r)) => {
                let (lo, hi) = parse_interval(r)?;
                Ok(Some(NumberField::new(parse_int_list(m)?, lo, hi)?))
            }
            _ => Err(Error::InvalidParameter("--minpoly and --root-interval go together".into())),
        }
    }
}

pub fn field_info(k: &NumberField) -> FieldInfo {
    let iv = k.isolating_interval();
    FieldInfo {
        minpoly: k.minpoly().iter().map(ToString::to_string).collect(),
        root_interval: [fmt_rational(&iv.lo), fmt_rational(&iv.hi)],
    }
}

pub enum Value {
    Rat(Rational),
    Nf(NFElement),
}

pub enum Point {
    Rat(ProjPoint<Rational>),
    Nf(ProjPoint<NFElement>, FieldInfo),
}

impl Point {
    pub fn dim(&self) -> usize {
        match self {
            Point::Rat(p) => p.dim(),
            Point::Nf(p, _) => p.dim(),
        }
    }

    pub fn field(&self) -> Option<&FieldInfo> {
        match self {
            Point::Rat(_) => None,
            Point::Nf(_, f) => Some(f),
        }
    }
}

/// Runs a generic body on whichever scalar type the point carries.
#[macro_export]
macro_rules! with_point {
    ($p:expr, $q:ident => $body:expr) => {
        match $p {
            $crate::point::Point::Rat($q) => $body,
            $crate::point::Point::Nf($q, _) => $body,
        }
    };
}

#[macro_export]
macro_rules! with_value {
    ($v:expr, $x:ident => $body:expr) => {
        match $v {
            $crate::point::Value::Rat($x) => $body,
            $crate::point::Value::Nf($x) => $body,
        }
    };
}

fn parse_coord(s: &str, field: Option<&Arc<NumberField>>) -> Result<Value> {
    match field {
        Some(k) => Ok(Value::Nf(k.element(parse_poly(s, 'a')?))),
        None if s.contains('a') => {
            Err(Error::InvalidParameter(format!("{s:?} uses the generator but no --minpoly was given")))
        }
        None => Ok(Value::Rat(parse_rational(s)?)),
    }
}

pub fn parse_value(s: &str, fa: &FieldArgs) -> Result<Value> {
    parse_coord(s, fa.field()?.as_ref())
}

/// `dim` affine coordinates get a trailing `1`; `dim + 1` are homogeneous.
/// Without `--dim` the coordinates are affine.
pub fn parse_point(coords: &[String], dim: Option<usize>, fa: &FieldArgs) -> Result<Point> {
    let field = fa.field()?;
    let dim = dim.unwrap_or(coords.len());
    if dim == 0 {
        return Err(Error::InvalidParameter("a point needs at least one coordinate".into()));
    }
    if coords.len() != dim && coords.len() != dim + 1 {
        return Err(Error::DimensionMismatch { expected: dim + 1, got: coords.len() });
    }
    let homogeneous = coords.len() == dim + 1;
    match &field {
        Some(k) => {
            let mut c = coords
                .iter()
                .map(|s| Ok(k.element(parse_poly(s, 'a')?)))
                .collect::<Result<Vec<NFElement>>>()?;
            if !homogeneous {
                c.push(k.constant(Rational::from_integer(1.into())));
            }
            Ok(Point::Nf(ProjPoint::new(c)?, field_info(k)))
        }
        None => {
            let mut c = coords
                .iter()
                .map(|s| match parse_coord(s, None)? {
                    Value::Rat(r) => Ok(r),
                    Value::Nf(_) => unreachable!("no field"),
                })
                .collect::<Result<Vec<Rational>>>()?;
            if !homogeneous {
                c.push(Rational::from_integer(1.into()));
            }
            Ok(Point::Rat(ProjPoint::new(c)?))
        }
    }
}
