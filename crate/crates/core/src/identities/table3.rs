//! Closed eta and theta expressions for the Hauptmoduli, each equal to
//! `j_N` plus a constant.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational};
use crate::forms::{eta_product, level_constants, EtaProduct};
use crate::identities::theta::{theta_puiseux, Parity, ThetaSpec};
use crate::jst::{run_jst, JstOptions, Variant};
use crate::puiseux::Puiseux;
use crate::qseries::QSeries;

/// Levels whose expression is a polynomial relation in `j_M(z), j_M(dz)`
/// rather than a closed formula.
pub const IMPLICIT_LEVELS: [u64; 12] = [34, 38, 51, 55, 62, 69, 87, 94, 95, 105, 110, 119];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(Rational),
    Eta(EtaProduct),
    Theta(ThetaSpec),
    Sum(Vec<Expr>),
    Scaled(Rational, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Quotient(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, i64),
}

impl Expr {
    /// Every leaf is expanded through `rel` terms past its leading exponent.
    pub fn eval(&self, rel: i64) -> Result<Puiseux> {
        Ok(match self {
            Expr::Const(c) => Puiseux::from_qseries(QSeries::monomial(c.clone(), 0, rel)),
            Expr::Eta(e) => e.to_puiseux(rel)?,
            Expr::Theta(t) => theta_puiseux(t, rel)?,
            Expr::Sum(parts) => {
                let mut it = parts.iter();
                let first = it.next().map_or(Ok(Puiseux::from_qseries(QSeries::zero(rel))), |p| p.eval(rel))?;
                it.try_fold(first, |acc, p| Ok::<_, Error>(acc.add(&p.eval(rel)?)))?
            }
            Expr::Scaled(c, e) => e.eval(rel)?.scale(c),
            Expr::Product(a, b) => a.eval(rel)?.mul(&b.eval(rel)?),
            Expr::Quotient(a, b) => a.eval(rel)?.div(&b.eval(rel)?)?,
            Expr::Power(a, k) => a.eval(rel)?.pow(*k)?,
        })
    }

    /// Integral-exponent expansion known at least through `q^trunc`.
    pub fn expand(&self, trunc: i64) -> Result<QSeries> {
        let mut rel = trunc + 8;
        loop {
            let s = self.eval(rel)?.to_qseries()?;
            if s.trunc() >= trunc {
                return Ok(s.truncate(trunc));
            }
            rel += (trunc - s.trunc()).max(4);
        }
    }

    fn boxed(self) -> Box<Expr> {
        Box::new(self)
    }
}

/// `num / den` as a single eta product.
pub fn eta_quotient(num: &[(u64, i64)], den: &[(u64, i64)], trunc: i64) -> Result<QSeries> {
    let factors = num.iter().copied().chain(den.iter().map(|&(v, e)| (v, -e))).collect();
    eta_product(&EtaProduct::new(factors), trunc)
}

/// `Σ c · base^p` for an eta quotient `base`.
fn laurent(base: &[(u64, i64)], terms: &[(i64, i64)]) -> Expr {
    Expr::Sum(
        terms
            .iter()
            .map(|&(p, c)| {
                let eta = Expr::Eta(EtaProduct::new(base.iter().map(|&(v, e)| (v, e * p)).collect()));
                if c == 1 { eta } else { Expr::Scaled(rat(c, 1), eta.boxed()) }
            })
            .collect(),
    )
}

fn theta(a: Rational, b: Rational, c: Rational, parity: Parity) -> Expr {
    Expr::Theta(ThetaSpec::new(a, b, c, parity))
}

fn itheta(a: i64, b: i64, c: i64) -> Expr {
    Expr::Theta(ThetaSpec::integral(a, b, c))
}

fn diff(a: Expr, b: Expr) -> Expr {
    Expr::Sum(vec![a, Expr::Scaled(rat(-1, 1), b.boxed())])
}

fn over(a: Expr, b: Expr) -> Expr {
    Expr::Quotient(a.boxed(), b.boxed())
}

fn pow(a: Expr, k: i64) -> Expr {
    if k == 1 { a } else { Expr::Power(a.boxed(), k) }
}

/// `2 η(z) η(Nz)`.
fn two_eta_eta(n: u64) -> Expr {
    Expr::Scaled(rat(2, 1), Expr::Eta(EtaProduct::new(vec![(1, 1), (n, 1)])).boxed())
}

/// `(θ_x - θ_y)(a, b, c) / (2 η(z) η(Nz))`.
fn odd_theta_quotient(n: u64, a: Rational, b: Rational, c: Rational) -> Expr {
    over(
        diff(theta(a.clone(), b.clone(), c.clone(), Parity::XOdd), theta(a, b, c, Parity::YOdd)),
        two_eta_eta(n),
    )
}

fn half(k: i64) -> Rational {
    rat(k, 2)
}

/// All closed expressions for level `n`, in printed order.
pub fn expressions(n: u64) -> Vec<Expr> {
    match n {
        2 => vec![laurent(&[(1, 1), (2, -1)], &[(24, 1), (-24, 4096)])],
        3 => vec![laurent(&[(1, 1), (3, -1)], &[(12, 1), (-12, 729)])],
        5 => vec![laurent(&[(1, 1), (5, -1)], &[(6, 1), (-6, 125)])],
        6 => vec![
            laurent(&[(1, 1), (2, 1), (3, -1), (6, -1)], &[(4, 1), (-4, 81)]),
            laurent(&[(1, 1), (3, 1), (2, -1), (6, -1)], &[(6, 1), (-6, 64)]),
            laurent(&[(2, 1), (3, 1), (1, -1), (6, -1)], &[(12, 1), (-12, 1)]),
        ],
        7 => vec![laurent(&[(1, 1), (7, -1)], &[(4, 1), (-4, 49)])],
        10 => vec![
            laurent(&[(1, 1), (2, 1), (5, -1), (10, -1)], &[(2, 1), (-2, 25)]),
            laurent(&[(1, 1), (5, 1), (2, -1), (10, -1)], &[(4, 1), (-4, 16)]),
            laurent(&[(2, 1), (5, 1), (1, -1), (10, -1)], &[(6, 1), (-6, 1)]),
        ],
        11 => vec![
            pow(over(itheta(2, 2, 6), Expr::Eta(EtaProduct::new(vec![(1, 1), (11, 1)]))), 2),
            laurent(&[(1, 1), (11, 1), (2, -1), (22, -1)], &[(2, 1), (-2, 16), (-4, 16)]),
        ],
        13 => vec![laurent(&[(1, 1), (13, -1)], &[(2, 1), (-2, 13)])],
        14 => vec![
            laurent(&[(1, 1), (7, 1), (2, -1), (14, -1)], &[(3, 1), (-3, 8)]),
            laurent(&[(2, 1), (7, 1), (1, -1), (14, -1)], &[(4, 1), (-4, 1)]),
        ],
        15 => vec![
            laurent(&[(1, 1), (5, 1), (3, -1), (15, -1)], &[(2, 1), (-2, 9)]),
            laurent(&[(3, 1), (5, 1), (1, -1), (15, -1)], &[(3, 1), (-3, -1)]),
        ],
        17 => vec![pow(odd_theta_quotient(17, half(1), rat(0, 1), half(17)), 2)],
        19 => vec![pow(
            over(
                Expr::Scaled(rat(2, 1), itheta(2, 2, 10).boxed()),
                diff(itheta(1, 2, 20), itheta(4, 2, 5)),
            ),
            2,
        )],
        21 => vec![
            laurent(&[(1, 1), (3, 1), (7, -1), (21, -1)], &[(1, 1), (-1, 7)]),
            laurent(&[(3, 1), (7, 1), (1, -1), (21, -1)], &[(2, 1), (-2, 1)]),
        ],
        22 => vec![laurent(&[(1, 1), (11, 1), (2, -1), (22, -1)], &[(2, 1), (-2, 4)])],
        23 => vec![
            over(itheta(2, 2, 12), Expr::Eta(EtaProduct::new(vec![(1, 1), (23, 1)]))),
            laurent(&[(1, 1), (23, 1), (2, -1), (46, -1)], &[(1, 1), (-1, 4), (-2, 4)]),
        ],
        26 => vec![laurent(&[(2, 1), (13, 1), (1, -1), (26, -1)], &[(2, 1), (-2, 1)])],
        29 => vec![odd_theta_quotient(29, half(1), rat(0, 1), half(29))],
        30 => vec![
            laurent(&[(1, 1), (6, 1), (10, 1), (15, 1), (2, -1), (3, -1), (5, -1), (30, -1)], &[(3, 1), (-3, 1)]),
            laurent(&[(1, 1), (3, 1), (5, 1), (15, 1), (2, -1), (6, -1), (10, -1), (30, -1)], &[(1, 1), (-1, 4)]),
            laurent(&[(3, 1), (5, 1), (6, 1), (10, 1), (1, -1), (2, -1), (15, -1), (30, -1)], &[(1, 1), (-1, 1)]),
            laurent(&[(2, 1), (3, 1), (10, 1), (15, 1), (1, -1), (5, -1), (6, -1), (30, -1)], &[(2, 1), (-2, 1)]),
        ],
        31 => vec![pow(over(diff(itheta(2, 2, 16), itheta(4, 2, 8)), two_eta_eta(31)), 3)],
        33 => vec![laurent(&[(1, 1), (11, 1), (3, -1), (33, -1)], &[(1, 1), (-1, 3)])],
        35 => vec![laurent(&[(5, 1), (7, 1), (1, -1), (35, -1)], &[(1, 1), (-1, -1)])],
        39 => vec![laurent(&[(3, 1), (13, 1), (1, -1), (39, -1)], &[(1, 1), (-1, 1)])],
        41 => vec![odd_theta_quotient(41, half(3), rat(2, 1), half(15))],
        42 => vec![
            laurent(&[(1, 1), (6, 1), (14, 1), (21, 1), (2, -1), (3, -1), (7, -1), (42, -1)], &[(2, 1), (-2, 1)]),
            laurent(&[(2, 1), (6, 1), (7, 1), (21, 1), (1, -1), (3, -1), (14, -1), (42, -1)], &[(1, 1), (-1, 1)]),
        ],
        46 => vec![laurent(&[(1, 1), (23, 1), (2, -1), (46, -1)], &[(1, 1), (-1, 2)])],
        47 => vec![over(diff(itheta(2, 2, 24), itheta(4, 2, 12)), two_eta_eta(47))],
        59 => vec![over(
            Expr::Scaled(rat(2, 1), itheta(6, 2, 10).boxed()),
            diff(itheta(2, 2, 30), itheta(6, 2, 10)),
        )],
        66 => vec![laurent(&[(2, 1), (3, 1), (22, 1), (33, 1), (1, -1), (6, -1), (11, -1), (66, -1)], &[(1, 1), (-1, 1)])],
        70 => vec![laurent(&[(1, 1), (10, 1), (14, 1), (35, 1), (2, -1), (5, -1), (7, -1), (70, -1)], &[(1, 1), (-1, 1)])],
        71 => vec![over(diff(itheta(4, 2, 18), itheta(6, 2, 12)), two_eta_eta(71))],
        78 => vec![laurent(&[(1, 1), (6, 1), (26, 1), (39, 1), (2, -1), (3, -1), (13, -1), (78, -1)], &[(1, 1), (-1, 1)])],
        _ => Vec::new(),
    }
}

/// Levels with at least one closed expression.
pub fn direct_levels() -> Vec<u64> {
    crate::forms::genus_zero_levels().filter(|&n| !expressions(n).is_empty()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crosscheck {
    pub level: u64,
    /// Differences were checked through this exponent.
    pub through: i64,
    /// `t - j_N` for each expression, in printed order.
    #[serde(with = "rational_vec")]
    pub constants: Vec<Rational>,
}

mod rational_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exactnum::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|r| r.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Compares every expression for level `n` against a given `j_N`
/// through `q^through`.
pub fn crosscheck_with(n: u64, j: &QSeries, through: i64) -> Result<Crosscheck> {
    let forms = expressions(n);
    if forms.is_empty() {
        return Err(Error::UnsupportedLevel(n));
    }
    if j.trunc() < through {
        return Err(Error::TruncationTooSmall { trunc: j.trunc(), needed: through });
    }
    let mut constants = Vec::with_capacity(forms.len());
    for (i, t) in forms.iter().enumerate() {
        let d = &t.expand(through)? - &j.truncate(through);
        if let Some((e, _)) = d.terms().find(|&(e, c)| e != 0 && !c.is_zero()) {
            return Err(Error::IdentityFailed { name: format!("t{n} form {}", i + 1), exponent: e });
        }
        constants.push(d.coeff(0).unwrap_or_else(Rational::zero));
    }
    Ok(Crosscheck { level: n, through, constants })
}

/// Runs the elimination for `j_N` and compares through
/// `min(κ_N, trunc)`.
pub fn crosscheck_hauptmodul(n: u64, trunc: i64) -> Result<Crosscheck> {
    let level = level_constants(n)?;
    let through = level.kappa()?.min(trunc);
    let r = run_jst(n, Variant::Jst2, JstOptions::default())?;
    crosscheck_with(n, &r.hauptmodul_expansion, through)
}
