//! Order-of-magnitude cosmology: ur counts, energies, photon ratios, and
//! black-hole entropy differences.
//!
//! Everything else in this crate is exact; this module deliberately is not.
//! A [`Magnitude`] carries a sign, a mantissa rounded to three significant
//! figures after every operation, an exact integer exponent, and a unit map,
//! so decade-level claims can be checked while mantissa-level discrepancies
//! stay visible instead of being rounded away. The headline quantities are
//! pure powers of the input ratio R over the proton Compton wavelength, so
//! their exponents are exact; the flagged rows (urs per electron, the
//! cosmological-constant scaling) genuinely disagree with their quoted
//! decades and are reported as such rather than failed or hidden.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CosmoError {
    #[error("unit mismatch: {left} vs {right}")]
    UnitMismatch { left: String, right: String },
    #[error("division by zero magnitude")]
    DivisionByZero,
    #[error("root of a negative magnitude")]
    NegativeRoot,
    #[error("root order must be positive")]
    ZeroRoot,
    #[error("unit {0} has exponents not divisible by the root order")]
    UnitRoot(String),
    #[error("unknown constant name {0}")]
    UnknownConstant(String),
    #[error("constant {0} must be positive")]
    NonPositive(String),
    #[error("constant {name} must carry unit {expected}, got {got}")]
    WrongUnit {
        name: String,
        expected: String,
        got: String,
    },
    #[error("cannot parse unit {0}")]
    BadUnit(String),
    #[error("cannot read constants: {0}")]
    Io(String),
    #[error("cannot parse constants: {0}")]
    Json(String),
}

/// Product of unit symbols with integer powers, e.g. `eV cm` or `cm^-2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Unit(BTreeMap<String, i32>);

impl Unit {
    pub fn dimensionless() -> Self {
        Unit(BTreeMap::new())
    }

    pub fn is_dimensionless(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses a whitespace-separated list of `symbol` or `symbol^power`.
    pub fn parse(text: &str) -> Result<Self, CosmoError> {
        let mut map = BTreeMap::new();
        for part in text.split_whitespace() {
            let (symbol, power) = match part.split_once('^') {
                Some((s, p)) => {
                    let power: i32 = p
                        .parse()
                        .map_err(|_| CosmoError::BadUnit(part.to_string()))?;
                    (s, power)
                }
                None => (part, 1),
            };
            if symbol.is_empty() || !symbol.chars().all(char::is_alphanumeric) {
                return Err(CosmoError::BadUnit(part.to_string()));
            }
            let entry = map.entry(symbol.to_string()).or_insert(0);
            *entry += power;
            if *entry == 0 {
                map.remove(symbol);
            }
        }
        Ok(Unit(map))
    }

    fn multiply(&self, other: &Unit) -> Unit {
        let mut map = self.0.clone();
        for (symbol, power) in &other.0 {
            let entry = map.entry(symbol.clone()).or_insert(0);
            *entry += power;
            if *entry == 0 {
                map.remove(symbol);
            }
        }
        Unit(map)
    }

    fn invert(&self) -> Unit {
        Unit(self.0.iter().map(|(s, p)| (s.clone(), -p)).collect())
    }

    fn pow(&self, n: i32) -> Unit {
        if n == 0 {
            return Unit::dimensionless();
        }
        Unit(self.0.iter().map(|(s, p)| (s.clone(), p * n)).collect())
    }

    fn root(&self, n: i32) -> Result<Unit, CosmoError> {
        let mut map = BTreeMap::new();
        for (symbol, power) in &self.0 {
            if power % n != 0 {
                return Err(CosmoError::UnitRoot(self.to_string()));
            }
            map.insert(symbol.clone(), power / n);
        }
        Ok(Unit(map))
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, p)| {
                if *p == 1 {
                    s.clone()
                } else {
                    format!("{s}^{p}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Signed order-of-magnitude quantity: mantissa in `[1, 10)` kept to three
/// significant figures, exact integer exponent, unit map. Zero is mantissa
/// `0` with exponent `0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Magnitude {
    mantissa: f64,
    exponent: i64,
    unit: Unit,
}

/// Rounds a mantissa already scaled to `[1, 10)` to three significant
/// figures.
fn round_mantissa(m: f64) -> f64 {
    (m * 100.0).round() / 100.0
}

impl Magnitude {
    /// Builds a canonical magnitude from any finite mantissa.
    pub fn new(mantissa: f64, exponent: i64, unit: Unit) -> Self {
        assert!(mantissa.is_finite(), "magnitude mantissa must be finite");
        let mut m = mantissa;
        let mut e = exponent;
        if m == 0.0 {
            return Magnitude {
                mantissa: 0.0,
                exponent: 0,
                unit,
            };
        }
        while m.abs() >= 10.0 {
            m /= 10.0;
            e += 1;
        }
        while m.abs() < 1.0 {
            m *= 10.0;
            e -= 1;
        }
        m = round_mantissa(m);
        if m.abs() >= 10.0 {
            m /= 10.0;
            e += 1;
        }
        Magnitude {
            mantissa: m,
            exponent: e,
            unit,
        }
    }

    pub fn dimensionless(mantissa: f64, exponent: i64) -> Self {
        Magnitude::new(mantissa, exponent, Unit::dimensionless())
    }

    pub fn zero(unit: Unit) -> Self {
        Magnitude {
            mantissa: 0.0,
            exponent: 0,
            unit,
        }
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn unit(&self) -> &Unit {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa > 0.0
    }

    pub fn mul(&self, other: &Magnitude) -> Magnitude {
        Magnitude::new(
            self.mantissa * other.mantissa,
            self.exponent + other.exponent,
            self.unit.multiply(&other.unit),
        )
    }

    pub fn div(&self, other: &Magnitude) -> Result<Magnitude, CosmoError> {
        if other.is_zero() {
            return Err(CosmoError::DivisionByZero);
        }
        Ok(Magnitude::new(
            self.mantissa / other.mantissa,
            self.exponent - other.exponent,
            self.unit.multiply(&other.unit.invert()),
        ))
    }

    /// Integer power with exact exponent arithmetic.
    pub fn powi(&self, n: i32) -> Result<Magnitude, CosmoError> {
        if n == 0 {
            return Ok(Magnitude::dimensionless(1.0, 0));
        }
        if n < 0 {
            return Magnitude::dimensionless(1.0, 0).div(&self.powi(-n)?);
        }
        Ok(Magnitude::new(
            self.mantissa.powi(n),
            self.exponent * i64::from(n),
            self.unit.pow(n),
        ))
    }

    /// `n`-th root; the exponent remainder folds into the mantissa so the
    /// stored exponent stays an exact integer.
    pub fn root(&self, n: u32) -> Result<Magnitude, CosmoError> {
        if n == 0 {
            return Err(CosmoError::ZeroRoot);
        }
        if self.mantissa < 0.0 {
            return Err(CosmoError::NegativeRoot);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let order = i64::from(n);
        let rem = self.exponent.rem_euclid(order);
        let whole = (self.exponent - rem) / order;
        let scaled = self.mantissa * 10f64.powi(rem as i32);
        let unit = self.unit.root(n as i32)?;
        Ok(Magnitude::new(
            scaled.powf(1.0 / f64::from(n)),
            whole,
            unit,
        ))
    }

    pub fn add(&self, other: &Magnitude) -> Result<Magnitude, CosmoError> {
        if self.unit != other.unit {
            return Err(CosmoError::UnitMismatch {
                left: self.unit.to_string(),
                right: other.unit.to_string(),
            });
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (high, low) = if self.exponent >= other.exponent {
            (self, other)
        } else {
            (other, self)
        };
        let shift = high.exponent - low.exponent;
        // Beyond three significant figures the smaller term cannot move the
        // mantissa; skipping the powi keeps the f64 in range.
        let sum = if shift > 15 {
            high.mantissa
        } else {
            high.mantissa + low.mantissa / 10f64.powi(shift as i32)
        };
        Ok(Magnitude::new(sum, high.exponent, high.unit.clone()))
    }

    pub fn sub(&self, other: &Magnitude) -> Result<Magnitude, CosmoError> {
        self.add(&Magnitude {
            mantissa: -other.mantissa,
            exponent: other.exponent,
            unit: other.unit.clone(),
        })
    }

    /// Absolute decade gap between this value and a quoted exponent.
    pub fn decade_difference(&self, quoted_exponent: i64) -> u64 {
        (self.exponent - quoted_exponent).unsigned_abs()
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")?;
        } else {
            write!(f, "{:.2}e{}", self.mantissa, self.exponent)?;
        }
        if !self.unit.is_dimensionless() {
            write!(f, " {}", self.unit)?;
        }
        Ok(())
    }
}

impl Serialize for Magnitude {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Magnitude", 3)?;
        s.serialize_field("mantissa", &self.mantissa)?;
        s.serialize_field("exponent", &self.exponent)?;
        s.serialize_field("unit", &self.unit.to_string())?;
        s.end()
    }
}

/// One named constant in a JSON override file.
#[derive(Debug, Clone, Deserialize)]
pub struct ConstantEntry {
    pub name: String,
    pub mantissa: f64,
    pub exponent: i64,
    pub unit: String,
}

/// Input constants for every estimate; defaults reproduce the quoted runs.
#[derive(Debug, Clone)]
pub struct CosmoConstants {
    /// Cosmic radius R, cm.
    pub cosmic_radius: Magnitude,
    /// Proton Compton wavelength, cm.
    pub proton_compton: Magnitude,
    /// Proton to electron mass ratio, dimensionless.
    pub mass_ratio: Magnitude,
    /// Proton rest energy, eV.
    pub proton_energy: Magnitude,
    /// Mass of the universe, g.
    pub universe_mass: Magnitude,
    /// Proton mass, g.
    pub proton_mass: Magnitude,
    /// Planck mass, g.
    pub planck_mass: Magnitude,
    /// Conversion factor hc, eV cm.
    pub hc: Magnitude,
    /// Planck length, cm.
    pub planck_length: Magnitude,
}

fn cm() -> Unit {
    Unit::parse("cm").expect("static unit")
}

fn ev() -> Unit {
    Unit::parse("eV").expect("static unit")
}

fn grams() -> Unit {
    Unit::parse("g").expect("static unit")
}

impl Default for CosmoConstants {
    fn default() -> Self {
        CosmoConstants {
            cosmic_radius: Magnitude::new(1.0, 28, cm()),
            proton_compton: Magnitude::new(1.0, -12, cm()),
            mass_ratio: Magnitude::dimensionless(1.836, 3),
            proton_energy: Magnitude::new(1.0, 9, ev()),
            universe_mass: Magnitude::new(1.0, 55, grams()),
            proton_mass: Magnitude::new(1.0, -24, grams()),
            planck_mass: Magnitude::new(1.0, -5, grams()),
            hc: Magnitude::new(1.24, -4, Unit::parse("eV cm").expect("static unit")),
            planck_length: Magnitude::new(1.6, -33, cm()),
        }
    }
}

impl CosmoConstants {
    fn field_mut(&mut self, name: &str) -> Option<&mut Magnitude> {
        match name {
            "cosmic_radius" => Some(&mut self.cosmic_radius),
            "proton_compton" => Some(&mut self.proton_compton),
            "mass_ratio" => Some(&mut self.mass_ratio),
            "proton_energy" => Some(&mut self.proton_energy),
            "universe_mass" => Some(&mut self.universe_mass),
            "proton_mass" => Some(&mut self.proton_mass),
            "planck_mass" => Some(&mut self.planck_mass),
            "hc" => Some(&mut self.hc),
            "planck_length" => Some(&mut self.planck_length),
            _ => None,
        }
    }

    /// Applies override entries on top of the defaults. Every entry must
    /// name a known constant, stay positive, and keep the default's unit.
    pub fn from_entries(entries: &[ConstantEntry]) -> Result<Self, CosmoError> {
        let mut constants = CosmoConstants::default();
        for entry in entries {
            let unit = Unit::parse(&entry.unit)?;
            let current = constants
                .field_mut(&entry.name)
                .ok_or_else(|| CosmoError::UnknownConstant(entry.name.clone()))?;
            if unit != *current.unit() {
                return Err(CosmoError::WrongUnit {
                    name: entry.name.clone(),
                    expected: current.unit().to_string(),
                    got: unit.to_string(),
                });
            }
            if entry.mantissa <= 0.0 || !entry.mantissa.is_finite() {
                return Err(CosmoError::NonPositive(entry.name.clone()));
            }
            *current = Magnitude::new(entry.mantissa, entry.exponent, unit);
        }
        Ok(constants)
    }

    pub fn from_json_str(text: &str) -> Result<Self, CosmoError> {
        let entries: Vec<ConstantEntry> =
            serde_json::from_str(text).map_err(|e| CosmoError::Json(e.to_string()))?;
        CosmoConstants::from_entries(&entries)
    }

    pub fn from_file(path: &Path) -> Result<Self, CosmoError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CosmoError::Io(format!("{}: {e}", path.display())))?;
        CosmoConstants::from_json_str(&text)
    }
}

/// Urs per object of Compton wavelength `lambda`: `R / lambda`.
pub fn ur_count(r: &Magnitude, lambda: &Magnitude) -> Result<Magnitude, CosmoError> {
    if r.unit() != lambda.unit() {
        return Err(CosmoError::UnitMismatch {
            left: r.unit().to_string(),
            right: lambda.unit().to_string(),
        });
    }
    r.div(lambda)
}

/// Total urs in the universe: `(R / lambda_p)^3`.
pub fn total_urs(r: &Magnitude, lambda_p: &Magnitude) -> Result<Magnitude, CosmoError> {
    ur_count(r, lambda_p)?.powi(3)
}

/// Energy of a single ur, `hc / R`: the uncertainty energy of a wavefunction
/// spread over the whole cosmic radius.
pub fn ur_energy(r: &Magnitude, hc: &Magnitude) -> Result<Magnitude, CosmoError> {
    hc.div(r)
}

/// Localization size of a probe of energy `e`: `hc / E`.
pub fn uncertainty_size(e: &Magnitude, hc: &Magnitude) -> Result<Magnitude, CosmoError> {
    hc.div(e)
}

/// Photon counts derived from the total ur number alone.
#[derive(Debug, Clone, Serialize)]
pub struct PhotonNumbers {
    /// Urs per photon, `N^(1/4)`.
    pub n_ph: Magnitude,
    /// Photon count, `N / n_ph`.
    pub z_ph: Magnitude,
    /// Photon to baryon ratio, `z_ph / z_p` with `z_p = N / N^(1/3)`.
    pub ratio: Magnitude,
}

pub fn photon_numbers(n: &Magnitude) -> Result<PhotonNumbers, CosmoError> {
    let n_ph = n.root(4)?;
    let z_ph = n.div(&n_ph)?;
    let z_p = n.div(&n.root(3)?)?;
    let ratio = z_ph.div(&z_p)?;
    Ok(PhotonNumbers { n_ph, z_ph, ratio })
}

/// Black-hole entropy gain from dropping mass `m` into mass `M`, in units of
/// the Planck mass squared: `4 pi ((M+m)^2 - M^2)`, expanded to
/// `8 pi M m + 4 pi m^2` so the huge-exponent cancellation never meets the
/// three-figure mantissa.
pub fn bekenstein_delta(
    m_big: &Magnitude,
    m_small: &Magnitude,
    planck_mass: &Magnitude,
) -> Result<Magnitude, CosmoError> {
    if m_big.unit() != m_small.unit() || m_big.unit() != planck_mass.unit() {
        return Err(CosmoError::UnitMismatch {
            left: m_big.unit().to_string(),
            right: m_small.unit().to_string(),
        });
    }
    let big = m_big.div(planck_mass)?;
    let small = m_small.div(planck_mass)?;
    let eight_pi = Magnitude::dimensionless(8.0 * std::f64::consts::PI, 0);
    let four_pi = Magnitude::dimensionless(4.0 * std::f64::consts::PI, 0);
    let cross = eight_pi.mul(&big).mul(&small);
    let square = four_pi.mul(&small.powi(2)?);
    cross.add(&square)
}

/// Cosmological-constant scaling `1 / R^2`, reported in inverse length
/// units and as the dimensionless Planck-unit reading `(l_P / R)^2`.
#[derive(Debug, Clone, Serialize)]
pub struct LambdaEstimate {
    pub inverse_length: Magnitude,
    pub planck_units: Magnitude,
}

pub fn lambda_estimate(
    r: &Magnitude,
    planck_length: &Magnitude,
) -> Result<LambdaEstimate, CosmoError> {
    let inverse_length = Magnitude::dimensionless(1.0, 0).div(&r.powi(2)?)?;
    let planck_units = planck_length.div(r)?.powi(2)?;
    Ok(LambdaEstimate {
        inverse_length,
        planck_units,
    })
}

/// Verdict for one table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowStatus {
    /// Within the decade tolerance.
    Pass,
    /// Outside tolerance on a row known to disagree; reported, not failed.
    Flagged,
    /// Outside tolerance on a row that should match.
    Fail,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            RowStatus::Pass => "pass",
            RowStatus::Flagged => "flagged",
            RowStatus::Fail => "FAIL",
        };
        write!(f, "{text}")
    }
}

/// One quantity compared against its quoted decade.
#[derive(Debug, Clone, Serialize)]
pub struct CosmoRow {
    pub quantity: String,
    pub computed: Magnitude,
    /// Quoted exponent for the same unit convention as `computed`.
    pub quoted_exponent: i64,
    pub decade_difference: u64,
    pub status: RowStatus,
}

/// Full comparison table; `pass` is false only if a non-flagged row missed.
#[derive(Debug, Clone, Serialize)]
pub struct CosmoTable {
    pub rows: Vec<CosmoRow>,
    pub pass: bool,
}

fn row(
    quantity: &str,
    computed: Magnitude,
    quoted_exponent: i64,
    tolerance: u64,
    flag_only: bool,
) -> CosmoRow {
    let decade_difference = computed.decade_difference(quoted_exponent);
    let status = if decade_difference <= tolerance {
        RowStatus::Pass
    } else if flag_only {
        RowStatus::Flagged
    } else {
        RowStatus::Fail
    };
    CosmoRow {
        quantity: quantity.to_string(),
        computed,
        quoted_exponent,
        decade_difference,
        status,
    }
}

/// Computes every estimate from the constants and compares each against its
/// quoted decade with a tolerance of one.
pub fn cosmo_table(constants: &CosmoConstants) -> Result<CosmoTable, CosmoError> {
    let c = constants;
    let n_p = ur_count(&c.cosmic_radius, &c.proton_compton)?;
    let electron_compton = c.proton_compton.mul(&c.mass_ratio);
    let n_e = ur_count(&c.cosmic_radius, &electron_compton)?;
    let n = total_urs(&c.cosmic_radius, &c.proton_compton)?;
    let z_p = n.div(&n_p)?;
    let e0 = ur_energy(&c.cosmic_radius, &c.hc)?;
    let u_total = n.mul(&e0);
    let u_cross = z_p.mul(&c.proton_energy);
    let photons = photon_numbers(&n)?;
    let delta_s = bekenstein_delta(&c.universe_mass, &c.proton_mass, &c.planck_mass)?;
    let lambda = lambda_estimate(&c.cosmic_radius, &c.planck_length)?;

    let rows = vec![
        row("urs per proton n_p", n_p, 40, 1, false),
        row("urs per electron n_e", n_e, 38, 1, true),
        row("total urs N", n, 120, 1, false),
        row("nucleon count z_p", z_p, 80, 1, false),
        row("ur energy E0", e0, -32, 1, false),
        row("total energy U = N*E0", u_total, 88, 1, false),
        row("total energy U = z_p*E_p", u_cross, 88, 1, false),
        row("urs per photon n_ph", photons.n_ph, 30, 1, false),
        row("photon count z_ph", photons.z_ph, 90, 1, false),
        row("photon/baryon ratio", photons.ratio, 10, 1, false),
        row("entropy gain dS_max", delta_s, 41, 1, false),
        row("lambda 1/R^2", lambda.inverse_length, -120, 1, true),
        row("lambda (l_P/R)^2", lambda.planck_units, -120, 1, true),
    ];
    let pass = rows.iter().all(|r| r.status != RowStatus::Fail);
    Ok(CosmoTable { rows, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dimensionless(m: f64, e: i64) -> Magnitude {
        Magnitude::dimensionless(m, e)
    }

    #[test]
    fn magnitude_canonicalizes() {
        let m = dimensionless(25.133, 41);
        assert_eq!(m.mantissa(), 2.51);
        assert_eq!(m.exponent(), 42);
        let m = dimensionless(0.5, 3);
        assert_eq!(m.mantissa(), 5.0);
        assert_eq!(m.exponent(), 2);
        let m = dimensionless(9.996, 0);
        assert_eq!(m.mantissa(), 1.0);
        assert_eq!(m.exponent(), 1);
        assert_eq!(dimensionless(0.0, 7), Magnitude::zero(Unit::dimensionless()));
    }

    #[test]
    fn magnitude_display_is_fixed_width_mantissa() {
        assert_eq!(dimensionless(1.0, 40).to_string(), "1.00e40");
        assert_eq!(
            Magnitude::new(1.24, -32, Unit::parse("eV").unwrap()).to_string(),
            "1.24e-32 eV"
        );
        assert_eq!(
            Magnitude::new(1.0, -56, Unit::parse("cm^-2").unwrap()).to_string(),
            "1.00e-56 cm^-2"
        );
        assert_eq!(Magnitude::zero(Unit::dimensionless()).to_string(), "0");
    }

    #[test]
    fn unit_parse_rejects_garbage() {
        assert!(Unit::parse("eV cm").is_ok());
        assert!(Unit::parse("cm^-2").is_ok());
        assert!(Unit::parse("cm^x").is_err());
        assert!(Unit::parse("c m^").is_err());
        assert_eq!(Unit::parse("cm cm^-1").unwrap(), Unit::dimensionless());
    }

    #[test]
    fn arithmetic_tracks_units() {
        let r = Magnitude::new(1.0, 28, Unit::parse("cm").unwrap());
        let hc = Magnitude::new(1.24, -4, Unit::parse("eV cm").unwrap());
        let e0 = hc.div(&r).unwrap();
        assert_eq!(e0.to_string(), "1.24e-32 eV");
        let back = hc.div(&e0).unwrap();
        assert_eq!(back.to_string(), "1.00e28 cm");
        assert!(r.add(&e0).is_err());
    }

    #[test]
    fn root_folds_exponent_remainder() {
        let n = dimensionless(1.0, 120);
        assert_eq!(n.root(4).unwrap().to_string(), "1.00e30");
        let odd = dimensionless(1.0, 121);
        assert_eq!(odd.root(4).unwrap().to_string(), "1.78e30");
        assert!(dimensionless(-2.0, 4).root(2).is_err());
        let area = Magnitude::new(4.0, 2, Unit::parse("cm^2").unwrap());
        assert_eq!(area.root(2).unwrap().to_string(), "2.00e1 cm");
        assert!(Magnitude::new(1.0, 0, Unit::parse("cm").unwrap())
            .root(2)
            .is_err());
    }

    #[test]
    fn addition_aligns_and_rounds() {
        let a = dimensionless(2.51, 42);
        let b = dimensionless(1.26, -38);
        assert_eq!(a.add(&b).unwrap(), a, "tiny term is below three figures");
        let c = dimensionless(9.99, 0).add(&dimensionless(2.0, -2)).unwrap();
        assert_eq!(c.to_string(), "1.00e1");
        let zero = a.sub(&a).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn ur_counts_match_quoted_decades() {
        let c = CosmoConstants::default();
        let n_p = ur_count(&c.cosmic_radius, &c.proton_compton).unwrap();
        assert_eq!(n_p.to_string(), "1.00e40");
        let same = ur_count(&c.proton_compton, &c.proton_compton).unwrap();
        assert_eq!(same.to_string(), "1.00e0");
        assert!(ur_count(&c.cosmic_radius, &c.proton_energy).is_err());

        let electron_compton = c.proton_compton.mul(&c.mass_ratio);
        let n_e = ur_count(&c.cosmic_radius, &electron_compton).unwrap();
        assert_eq!(n_e.exponent(), 36, "two decades short of the quoted 38");
        assert_eq!(n_e.decade_difference(38), 2);
    }

    #[test]
    fn total_urs_is_the_cube() {
        let c = CosmoConstants::default();
        let n = total_urs(&c.cosmic_radius, &c.proton_compton).unwrap();
        assert_eq!(n.to_string(), "1.00e120");
        let n_p = ur_count(&c.cosmic_radius, &c.proton_compton).unwrap();
        assert_eq!(n.div(&n_p).unwrap().exponent(), 80);
        let trivial = total_urs(&c.proton_compton, &c.proton_compton).unwrap();
        assert_eq!(trivial.to_string(), "1.00e0");
    }

    #[test]
    fn ur_energy_inverts_with_size() {
        let c = CosmoConstants::default();
        let e0 = ur_energy(&c.cosmic_radius, &c.hc).unwrap();
        assert_eq!(e0.to_string(), "1.24e-32 eV");
        let doubled = c.cosmic_radius.mul(&dimensionless(2.0, 0));
        assert_eq!(ur_energy(&doubled, &c.hc).unwrap().to_string(), "6.20e-33 eV");

        let size = uncertainty_size(&e0, &c.hc).unwrap();
        assert_eq!(size, c.cosmic_radius, "E0 probe spans the cosmic radius");
        let round_trip = ur_energy(&size, &c.hc).unwrap();
        assert_eq!(round_trip, e0);

        let probe = uncertainty_size(&c.proton_energy, &c.hc).unwrap();
        assert_eq!(probe.decade_difference(c.proton_compton.exponent()), 1);
    }

    #[test]
    fn photon_numbers_from_total() {
        let n = dimensionless(1.0, 120);
        let p = photon_numbers(&n).unwrap();
        assert_eq!(p.n_ph.to_string(), "1.00e30");
        assert_eq!(p.z_ph.to_string(), "1.00e90");
        assert_eq!(p.ratio.to_string(), "1.00e10");
    }

    #[test]
    fn bekenstein_expansion_avoids_cancellation() {
        let c = CosmoConstants::default();
        let delta = bekenstein_delta(&c.universe_mass, &c.proton_mass, &c.planck_mass).unwrap();
        assert_eq!(delta.to_string(), "2.51e42");
        assert_eq!(delta.decade_difference(41), 1);

        // With m much smaller than M the quadratic term is invisible at
        // three figures, so the two displayed forms agree.
        let big = c.universe_mass.div(&c.planck_mass).unwrap();
        let small = c.proton_mass.div(&c.planck_mass).unwrap();
        let eight_pi = dimensionless(8.0 * std::f64::consts::PI, 0);
        assert_eq!(delta, eight_pi.mul(&big).mul(&small));

        let zero = Magnitude::zero(grams());
        let nothing = bekenstein_delta(&c.universe_mass, &zero, &c.planck_mass).unwrap();
        assert!(nothing.is_zero());
        assert!(bekenstein_delta(&c.universe_mass, &c.proton_energy, &c.planck_mass).is_err());
    }

    #[test]
    fn lambda_scaling_reported_both_ways() {
        let c = CosmoConstants::default();
        let lambda = lambda_estimate(&c.cosmic_radius, &c.planck_length).unwrap();
        assert_eq!(lambda.inverse_length.to_string(), "1.00e-56 cm^-2");
        assert_eq!(lambda.planck_units.to_string(), "2.56e-122");

        let r_squared = c.cosmic_radius.powi(2).unwrap();
        let unity = lambda.inverse_length.mul(&r_squared);
        assert_eq!(unity.to_string(), "1.00e0");

        let doubled = c.cosmic_radius.mul(&dimensionless(2.0, 0));
        let quartered = lambda_estimate(&doubled, &c.planck_length).unwrap();
        assert_eq!(quartered.inverse_length.to_string(), "2.50e-57 cm^-2");
    }

    #[test]
    fn default_table_matches_quoted_decades() {
        let table = cosmo_table(&CosmoConstants::default()).unwrap();
        assert!(table.pass);
        let expect: Vec<(&str, i64, RowStatus)> = vec![
            ("urs per proton n_p", 40, RowStatus::Pass),
            ("urs per electron n_e", 36, RowStatus::Flagged),
            ("total urs N", 120, RowStatus::Pass),
            ("nucleon count z_p", 80, RowStatus::Pass),
            ("ur energy E0", -32, RowStatus::Pass),
            ("total energy U = N*E0", 88, RowStatus::Pass),
            ("total energy U = z_p*E_p", 89, RowStatus::Pass),
            ("urs per photon n_ph", 30, RowStatus::Pass),
            ("photon count z_ph", 90, RowStatus::Pass),
            ("photon/baryon ratio", 10, RowStatus::Pass),
            ("entropy gain dS_max", 42, RowStatus::Pass),
            ("lambda 1/R^2", -56, RowStatus::Flagged),
            ("lambda (l_P/R)^2", -122, RowStatus::Flagged),
        ];
        assert_eq!(table.rows.len(), expect.len());
        for (row, (name, exponent, status)) in table.rows.iter().zip(&expect) {
            assert_eq!(row.quantity, *name);
            assert_eq!(row.computed.exponent(), *exponent, "{name}");
            assert_eq!(row.status, *status, "{name}");
        }
    }

    #[test]
    fn constants_overrides_apply_and_validate() {
        let json = r#"[{"name": "cosmic_radius", "mantissa": 1.0, "exponent": 29, "unit": "cm"}]"#;
        let c = CosmoConstants::from_json_str(json).unwrap();
        let n = total_urs(&c.cosmic_radius, &c.proton_compton).unwrap();
        assert_eq!(n.exponent(), 123, "cubic scaling moves N by three decades");

        let unknown = r#"[{"name": "zeppelin", "mantissa": 1.0, "exponent": 0, "unit": ""}]"#;
        assert!(matches!(
            CosmoConstants::from_json_str(unknown),
            Err(CosmoError::UnknownConstant(_))
        ));
        let wrong_unit = r#"[{"name": "cosmic_radius", "mantissa": 1.0, "exponent": 28, "unit": "eV"}]"#;
        assert!(matches!(
            CosmoConstants::from_json_str(wrong_unit),
            Err(CosmoError::WrongUnit { .. })
        ));
        let negative = r#"[{"name": "cosmic_radius", "mantissa": -1.0, "exponent": 28, "unit": "cm"}]"#;
        assert!(matches!(
            CosmoConstants::from_json_str(negative),
            Err(CosmoError::NonPositive(_))
        ));
    }

    proptest! {
        #[test]
        fn product_stays_canonical(
            m1 in 1.0f64..10.0, e1 in -60i64..60, m2 in 1.0f64..10.0, e2 in -60i64..60
        ) {
            let p = dimensionless(m1, e1).mul(&dimensionless(m2, e2));
            prop_assert!(p.mantissa() >= 1.0 && p.mantissa() < 10.0);
        }

        #[test]
        fn division_undoes_exponents(
            m1 in 1.0f64..10.0, e1 in -60i64..60, m2 in 1.0f64..10.0, e2 in -60i64..60
        ) {
            let a = dimensionless(m1, e1);
            let b = dimensionless(m2, e2);
            let back = a.mul(&b).div(&b).unwrap();
            prop_assert_eq!(back.exponent(), a.exponent());
            prop_assert!((back.mantissa() - a.mantissa()).abs() < 0.05);
        }
    }
}
