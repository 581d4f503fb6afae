//! Configuration of the ambient Fano threefold: genus, degree, Todd class,
//! and the catalog of exceptional-bundle numerical classes.

use serde::{Deserialize, Serialize};

use crate::chern::NumChern;
use crate::exact::{parse_rational, rat, rat_int, Rational};
use crate::{Error, Result};

/// Todd class in powers of the hyperplane class. `td0 = 1` and `td1 = 1/2`
/// are forced for an index-1 threefold; the higher coefficients are only
/// printed for genus 6, so elsewhere they must come from configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Todd {
    pub td0: Rational,
    pub td1: Rational,
    pub td2: Option<Rational>,
    pub td3: Option<Rational>,
}

impl Todd {
    fn partial() -> Self {
        Todd {
            td0: rat_int(1),
            td1: rat(1, 2),
            td2: None,
            td3: None,
        }
    }

    fn gushel_mukai() -> Self {
        Todd {
            td0: rat_int(1),
            td1: rat(1, 2),
            td2: Some(rat(17, 60)),
            td3: Some(rat(1, 10)),
        }
    }

    pub fn is_full(&self) -> bool {
        self.td2.is_some() && self.td3.is_some()
    }

    /// The four coefficients, erroring when the tail is unset.
    pub fn coefficients(&self) -> Result<[Rational; 4]> {
        match (&self.td2, &self.td3) {
            (Some(t2), Some(t3)) => {
                Ok([self.td0.clone(), self.td1.clone(), t2.clone(), t3.clone()])
            }
            _ => Err(Error::MissingTodd),
        }
    }
}

/// Ambient threefold data: even genus `g`, degree `d = 2g - 2`, Todd class,
/// and the optional configured tails for the genus-g catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyParams {
    genus: i64,
    degree: i64,
    todd: Todd,
    e2_ch3: Option<Rational>,
    basis_ch3: Option<(Rational, Rational)>,
}

impl VarietyParams {
    /// The genus-6 threefold, with every constant wired.
    pub fn gushel_mukai() -> Self {
        VarietyParams {
            genus: 6,
            degree: 10,
            todd: Todd::gushel_mukai(),
            e2_ch3: Some(rat(1, 30)),
            basis_ch3: Some((rat(1, 20), rat(1, 60))),
        }
    }

    /// Builds the variety for an even genus `6 <= g <= 12`. For `g != 6` the
    /// Todd tail and catalog third characters stay unset until configured.
    pub fn make(genus: i64) -> Result<Self> {
        if genus % 2 != 0 || !(6..=12).contains(&genus) {
            return Err(Error::UnsupportedGenus(genus));
        }
        if genus == 6 {
            return Ok(VarietyParams::gushel_mukai());
        }
        Ok(VarietyParams {
            genus,
            degree: 2 * genus - 2,
            todd: Todd::partial(),
            e2_ch3: None,
            basis_ch3: None,
        })
    }

    pub fn from_config(cfg: &VarietyConfig) -> Result<Self> {
        let mut var = VarietyParams::make(cfg.genus)?;
        if var.genus != 6 {
            if let Some(todd) = &cfg.todd {
                let parsed: Result<Vec<Rational>> =
                    todd.iter().map(|s| parse_rational(s)).collect();
                let parsed = parsed?;
                if parsed[0] != rat_int(1) || parsed[1] != rat(1, 2) {
                    return Err(Error::Parse(
                        "todd must start with 1, 1/2 on an index-1 threefold".into(),
                    ));
                }
                // the top coefficient integrates to chi(O) = 1; mutation
                // orthogonality depends on it
                if &parsed[3] * var.degree_rational() != rat_int(1) {
                    return Err(Error::Parse(format!(
                        "todd top coefficient must be 1/{} so that chi(O, O) = 1",
                        var.degree
                    )));
                }
                var.todd.td2 = Some(parsed[2].clone());
                var.todd.td3 = Some(parsed[3].clone());
            }
            if let Some(s) = &cfg.e2_ch3 {
                var.e2_ch3 = Some(parse_rational(s)?);
            }
            if let Some([s1, s2]) = &cfg.basis_ch3 {
                var.basis_ch3 = Some((parse_rational(s1)?, parse_rational(s2)?));
            }
        }
        Ok(var)
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    /// `d = H^3 = 2g - 2`.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn degree_rational(&self) -> Rational {
        rat_int(self.degree)
    }

    pub fn todd(&self) -> &Todd {
        &self.todd
    }

    pub fn e2_ch3(&self) -> Option<&Rational> {
        self.e2_ch3.as_ref()
    }

    pub fn basis_ch3(&self) -> Option<&(Rational, Rational)> {
        self.basis_ch3.as_ref()
    }

    pub fn is_gushel_mukai(&self) -> bool {
        self.genus == 6
    }
}

/// JSON configuration:
/// `{"genus": 6}` or
/// `{"genus": 10, "todd": ["1","1/2","p/q","p/q"], "e2_ch3": "p/q",
///   "basis_ch3": ["p/q","p/q"]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VarietyConfig {
    pub genus: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub todd: Option<[String; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e2_ch3: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_ch3: Option<[String; 2]>,
}

/// Catalog entries: line bundles `O(k)`, the rank-2 tautological restriction
/// and its dual (genus 6), and the genus-g rank-2 bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectName {
    LineBundle(i64),
    TautSub,
    TautSubDual,
    E2,
}

impl ObjectName {
    /// Parses `"O"`, `"O(k)"`, `"U"`, `"Udual"`, `"E2"` (leading `@` allowed).
    pub fn parse(name: &str) -> Result<Self> {
        let name = name.trim().strip_prefix('@').unwrap_or_else(|| name.trim());
        match name {
            "O" => return Ok(ObjectName::LineBundle(0)),
            "U" => return Ok(ObjectName::TautSub),
            "Udual" => return Ok(ObjectName::TautSubDual),
            "E2" => return Ok(ObjectName::E2),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix("O(") {
            if let Some(k) = rest.strip_suffix(')') {
                if let Ok(k) = k.trim().parse::<i64>() {
                    return Ok(ObjectName::LineBundle(k));
                }
            }
        }
        Err(Error::UnknownObject(name.to_string()))
    }
}

/// Exact numerical class of a catalog object.
pub fn catalog(var: &VarietyParams, name: &ObjectName) -> Result<NumChern> {
    match name {
        ObjectName::LineBundle(k) => Ok(NumChern::line_bundle(*k)),
        ObjectName::TautSub => {
            if !var.is_gushel_mukai() {
                return Err(Error::UnknownObject(format!("U at genus {}", var.genus())));
            }
            Ok(NumChern::new(
                rat_int(2),
                rat_int(-1),
                rat(1, 10),
                Some(rat(1, 30)),
            ))
        }
        ObjectName::TautSubDual => {
            if !var.is_gushel_mukai() {
                return Err(Error::UnknownObject(format!(
                    "Udual at genus {}",
                    var.genus()
                )));
            }
            Ok(NumChern::new(
                rat_int(2),
                rat_int(1),
                rat(1, 10),
                Some(rat(-1, 30)),
            ))
        }
        ObjectName::E2 => {
            let g = var.genus();
            let d = var.degree();
            Ok(NumChern::new(
                rat_int(2),
                rat_int(-1),
                rat(g - 4, 2 * d),
                var.e2_ch3().cloned(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn genus_6_constants() {
        let var = VarietyParams::make(6).unwrap();
        assert_eq!(var.degree(), 10);
        let td = var.todd().coefficients().unwrap();
        assert_eq!(td, [rat_int(1), rat(1, 2), rat(17, 60), rat(1, 10)]);
    }

    #[test]
    fn genus_8_partial_todd() {
        let var = VarietyParams::make(8).unwrap();
        assert_eq!(var.degree(), 14);
        assert!(!var.todd().is_full());
        assert_eq!(var.todd().coefficients(), Err(Error::MissingTodd));
    }

    #[test]
    fn odd_or_out_of_range_genus_rejected() {
        assert_eq!(VarietyParams::make(7), Err(Error::UnsupportedGenus(7)));
        assert_eq!(VarietyParams::make(4), Err(Error::UnsupportedGenus(4)));
        assert_eq!(VarietyParams::make(14), Err(Error::UnsupportedGenus(14)));
    }

    #[test]
    fn catalog_line_bundles_and_taut_sub() {
        let var = VarietyParams::gushel_mukai();
        let o1 = catalog(&var, &ObjectName::LineBundle(1)).unwrap();
        assert_eq!(
            o1,
            NumChern::new(rat_int(1), rat_int(1), rat(1, 2), Some(rat(1, 6)))
        );
        let u = catalog(&var, &ObjectName::TautSub).unwrap();
        assert_eq!(
            u,
            NumChern::new(rat_int(2), rat_int(-1), rat(1, 10), Some(rat(1, 30)))
        );
        // the dual twisted down by H is the bundle itself
        let udual = catalog(&var, &ObjectName::TautSubDual).unwrap();
        assert_eq!(udual.twist(-1), u);
        assert_eq!(u.dual(), udual);
    }

    #[test]
    fn line_bundles_sit_on_the_parabola() {
        for k in -10..=10 {
            let v = catalog(&VarietyParams::gushel_mukai(), &ObjectName::LineBundle(k)).unwrap();
            assert_eq!(v.ch2, &v.c1 * &v.c1 / rat_int(2));
        }
    }

    #[test]
    fn catalog_e2_for_genus_10() {
        let var = VarietyParams::make(10).unwrap();
        let e2 = catalog(&var, &ObjectName::E2).unwrap();
        assert_eq!(e2.rk, rat_int(2));
        assert_eq!(e2.c1, rat_int(-1));
        assert_eq!(e2.ch2, rat(1, 6));
        assert!(e2.ch3.is_none());
    }

    #[test]
    fn catalog_u_rejected_off_genus_6() {
        let var = VarietyParams::make(10).unwrap();
        assert!(matches!(
            catalog(&var, &ObjectName::TautSub),
            Err(Error::UnknownObject(_))
        ));
    }

    #[test]
    fn parse_object_names() {
        assert_eq!(
            ObjectName::parse("@O(2)").unwrap(),
            ObjectName::LineBundle(2)
        );
        assert_eq!(
            ObjectName::parse("O(-1)").unwrap(),
            ObjectName::LineBundle(-1)
        );
        assert_eq!(ObjectName::parse("@U").unwrap(), ObjectName::TautSub);
        assert_eq!(ObjectName::parse("Udual").unwrap(), ObjectName::TautSubDual);
        assert!(ObjectName::parse("@nope").is_err());
    }

    #[test]
    fn config_round_trip() {
        let cfg: VarietyConfig = serde_json::from_str(r#"{"genus": 6}"#).unwrap();
        let var = VarietyParams::from_config(&cfg).unwrap();
        assert!(var.is_gushel_mukai());

        let cfg: VarietyConfig = serde_json::from_str(
            r#"{"genus": 10, "todd": ["1","1/2","7/24","1/18"], "e2_ch3": "1/36"}"#,
        )
        .unwrap();
        let var = VarietyParams::from_config(&cfg).unwrap();
        assert_eq!(var.degree(), 18);
        assert!(var.todd().is_full());
        assert_eq!(var.e2_ch3(), Some(&rat(1, 36)));
    }
}
