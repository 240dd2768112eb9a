//! Layout-grid arithmetic: bitcell footprints in CPP×MP units, via aspect
//! ratios, cross-node SRAM density matching and geometry-derived bitline
//! resistance.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_positive, Error, Result};

/// N3 high-density SRAM bitcell area used as the cross-node matching target [µm²].
pub const SRAM_TARGET_UM2: f64 = 0.021;

/// Via aspect ratio above which integration is considered risky.
pub const VIA_AR_LIMIT: f64 = 3.0;

/// Bitline resistance per unit length [Ω/nm] fitted so that the four
/// 128-row bitline resistances of the N7 reference arrays are matched with
/// the smallest worst-case relative error (see `calibrate::fit_bitline`).
pub const DEFAULT_BL_OHM_PER_NM: f64 = 0.062_062;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConfigId {
    #[serde(rename = "2T1R-FV")]
    TwoT1rFv,
    #[serde(rename = "2T1R-RV")]
    TwoT1rRv,
    #[serde(rename = "1T1R1T")]
    OneT1r1t,
    #[serde(rename = "1T1R1T-VGA")]
    OneT1r1tVga,
    #[serde(rename = "1T1D1R")]
    OneT1d1r,
}

impl ConfigId {
    pub const ALL: [ConfigId; 5] = [
        ConfigId::TwoT1rFv,
        ConfigId::TwoT1rRv,
        ConfigId::OneT1r1t,
        ConfigId::OneT1r1tVga,
        ConfigId::OneT1d1r,
    ];

    /// The four configurations with a write path characterized at N7.
    pub const WRITE: [ConfigId; 4] = [
        ConfigId::TwoT1rRv,
        ConfigId::OneT1r1t,
        ConfigId::OneT1r1tVga,
        ConfigId::OneT1d1r,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConfigId::TwoT1rFv => "2T1R-FV",
            ConfigId::TwoT1rRv => "2T1R-RV",
            ConfigId::OneT1r1t => "1T1R1T",
            ConfigId::OneT1r1tVga => "1T1R1T-VGA",
            ConfigId::OneT1d1r => "1T1D1R",
        }
    }

    /// Flagpole-via 2T1R needs a via far above the integrable aspect ratio.
    pub fn is_unrealistic(self) -> bool {
        matches!(self, ConfigId::TwoT1rFv)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ConfigId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConfigId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase();
        ConfigId::ALL
            .into_iter()
            .find(|c| c.as_str() == norm)
            .or(match norm.as_str() {
                "2T1R" => Some(ConfigId::TwoT1rRv),
                "VGA" => Some(ConfigId::OneT1r1tVga),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownConfig(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TechNode {
    pub node_label: String,
    /// Contact poly pitch [nm].
    pub cpp: f64,
    /// Minimum metal pitch [nm].
    pub mp: f64,
    /// Fin pitch [nm].
    pub fp: f64,
    /// Bitline resistance per length [Ω/nm].
    pub bl_resistance_per_length: f64,
    /// M2 line width [nm].
    pub line_width_m2: f64,
}

impl TechNode {
    pub fn n7() -> Self {
        Self {
            node_label: "N7".into(),
            cpp: 56.0,
            mp: 40.0,
            fp: 30.0,
            bl_resistance_per_length: DEFAULT_BL_OHM_PER_NM,
            line_width_m2: 25.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_positive("tech.cpp", self.cpp)?;
        ensure_positive("tech.mp", self.mp)?;
        ensure_positive("tech.fp", self.fp)?;
        ensure_positive("tech.bl_resistance_per_length", self.bl_resistance_per_length)?;
        ensure_positive("tech.line_width_m2", self.line_width_m2)?;
        if self.cpp < self.mp {
            return Err(Error::param("tech.cpp", "cpp must be >= mp"));
        }
        Ok(())
    }

    /// Area of one CPP×MP tile [µm²].
    pub fn tile_um2(&self) -> f64 {
        self.cpp * self.mp * 1e-6
    }
}

impl Default for TechNode {
    fn default() -> Self {
        Self::n7()
    }
}

/// Cell footprint in grid units, per configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDims {
    pub width_cpp: u32,
    pub height_mp: u32,
}

/// Grid dimensions of every configuration, overridable from configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellLayout {
    #[serde(rename = "2T1R-FV")]
    pub fv: CellDims,
    #[serde(rename = "2T1R-RV")]
    pub rv: CellDims,
    #[serde(rename = "1T1R1T")]
    pub t1r1t: CellDims,
    #[serde(rename = "1T1R1T-VGA")]
    pub vga: CellDims,
    #[serde(rename = "1T1D1R")]
    pub t1d1r: CellDims,
}

impl Default for CellLayout {
    fn default() -> Self {
        let d = |w, h| CellDims {
            width_cpp: w,
            height_mp: h,
        };
        Self {
            fv: d(2, 4),
            rv: d(4, 4),
            t1r1t: d(3, 5),
            vga: d(3, 4),
            t1d1r: d(2, 4),
        }
    }
}

impl CellLayout {
    pub fn dims(&self, config: ConfigId) -> CellDims {
        [self.fv, self.rv, self.t1r1t, self.vga, self.t1d1r][config.index()]
    }

    pub fn validate(&self) -> Result<()> {
        for c in ConfigId::ALL {
            let d = self.dims(c);
            if d.width_cpp == 0 || d.height_mp == 0 {
                return Err(Error::param("layout", format!("{c}: grid dimensions must be >= 1")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellGeometry {
    pub config: ConfigId,
    pub width_cpp: u32,
    pub height_mp: u32,
    pub width_nm: f64,
    pub height_nm: f64,
    pub area_um2: f64,
}

impl CellGeometry {
    pub fn meets_sram_target(&self) -> bool {
        self.area_um2 <= SRAM_TARGET_UM2
    }

    /// Area in CPP×MP tiles.
    pub fn tiles(&self) -> u32 {
        self.width_cpp * self.height_mp
    }
}

pub fn bitcell_geometry(config: ConfigId, tech: &TechNode, layout: &CellLayout) -> CellGeometry {
    let CellDims { width_cpp, height_mp } = layout.dims(config);
    let width_nm = width_cpp as f64 * tech.cpp;
    let height_nm = height_mp as f64 * tech.mp;
    CellGeometry {
        config,
        width_cpp,
        height_mp,
        width_nm,
        height_nm,
        area_um2: width_nm * height_nm * 1e-6,
    }
}

/// Row of the area table as emitted to CSV.
#[derive(Debug, Clone, Serialize)]
pub struct AreaRow {
    pub config: ConfigId,
    pub width_cpp: u32,
    pub height_mp: u32,
    pub width_nm: f64,
    pub height_nm: f64,
    pub area_um2: f64,
    pub meets_sram_target: bool,
}

pub fn area_table(tech: &TechNode, layout: &CellLayout) -> Vec<AreaRow> {
    ConfigId::ALL
        .into_iter()
        .map(|c| {
            let g = bitcell_geometry(c, tech, layout);
            AreaRow {
                config: c,
                width_cpp: g.width_cpp,
                height_mp: g.height_mp,
                width_nm: g.width_nm,
                height_nm: g.height_nm,
                area_um2: g.area_um2,
                meets_sram_target: g.meets_sram_target(),
            }
        })
        .collect()
}

/// Vertical stack between M2 and the MTJ top contact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MtjStackGeometry {
    /// (layer name, thickness in nm), bottom to top.
    pub layers: Vec<(String, f64)>,
    /// Depth the RV stair via lands through after transversal routing [nm].
    pub rv_landing_depth_nm: f64,
}

impl Default for MtjStackGeometry {
    fn default() -> Self {
        // Individual thicknesses are assumed; only the 335 nm total is fixed.
        let layers = [
            ("BE", 40.0),
            ("SOT", 5.0),
            ("MTJ", 30.0),
            ("HM", 60.0),
            ("MHM", 50.0),
            ("TE/HM", 60.0),
            ("TV", 90.0),
        ];
        Self {
            layers: layers.iter().map(|(n, h)| (n.to_string(), *h)).collect(),
            rv_landing_depth_nm: 62.5,
        }
    }
}

impl MtjStackGeometry {
    pub fn stack_height_nm(&self) -> f64 {
        self.layers.iter().map(|(_, h)| h).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.layers.is_empty() {
            return Err(Error::param("stack_geometry.layers", "at least one layer required"));
        }
        for (_, h) in &self.layers {
            ensure_positive("stack_geometry.layers", *h)?;
        }
        ensure_positive("stack_geometry.rv_landing_depth_nm", self.rv_landing_depth_nm)
    }
}

pub fn via_aspect_ratio(stack_height_nm: f64, line_width_nm: f64) -> Result<f64> {
    ensure_positive("stack_height_nm", stack_height_nm)?;
    ensure_positive("line_width_nm", line_width_nm)?;
    Ok(stack_height_nm / line_width_nm)
}

#[derive(Debug, Clone, Serialize)]
pub struct ViaReport {
    pub config: ConfigId,
    pub via: &'static str,
    pub height_nm: f64,
    pub width_nm: f64,
    pub aspect_ratio: f64,
    pub integration_risk: bool,
}

/// Down-routing via of both 2T1R variants: a flagpole through the full stack
/// (FV) or a short stair landing (RV).
pub fn via_report(stack: &MtjStackGeometry, tech: &TechNode) -> Result<Vec<ViaReport>> {
    let mk = |config, via, h: f64| -> Result<ViaReport> {
        let ar = via_aspect_ratio(h, tech.line_width_m2)?;
        Ok(ViaReport {
            config,
            via,
            height_nm: h,
            width_nm: tech.line_width_m2,
            aspect_ratio: ar,
            integration_risk: ar > VIA_AR_LIMIT,
        })
    };
    Ok(vec![
        mk(ConfigId::TwoT1rFv, "FV", stack.stack_height_nm())?,
        mk(ConfigId::TwoT1rRv, "RV", stack.rv_landing_depth_nm)?,
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SramRoadmapEntry {
    pub node_label: String,
    pub cpp: f64,
    pub mp: f64,
    /// SRAM bitcell area to be matched [µm²].
    pub sram_area_um2: f64,
}

impl SramRoadmapEntry {
    pub fn validate(&self) -> Result<()> {
        ensure_positive("roadmap.cpp", self.cpp)?;
        ensure_positive("roadmap.mp", self.mp)?;
        ensure_positive("roadmap.sram_area_um2", self.sram_area_um2)
    }
}

/// Largest number of CPP×MP tiles whose area stays within the entry's SRAM area.
pub fn cross_node_budget(entry: &SramRoadmapEntry) -> u32 {
    let tiles = entry.sram_area_um2 * 1e6 / (entry.cpp * entry.mp);
    // Guard against 0.021e6/(cpp*mp) landing a hair under an integer.
    (tiles * (1.0 + 1e-12)).floor() as u32
}

/// Illustrative logic-node grid data, each matched against the N3 SRAM cell.
pub fn default_roadmap() -> Vec<SramRoadmapEntry> {
    [
        ("N16", 90.0, 64.0),
        ("N10", 66.0, 44.0),
        ("N7", 56.0, 40.0),
        ("N5", 51.0, 30.0),
        ("N3", 48.0, 24.0),
    ]
    .iter()
    .map(|&(n, cpp, mp)| SramRoadmapEntry {
        node_label: n.into(),
        cpp,
        mp,
        sram_area_um2: SRAM_TARGET_UM2,
    })
    .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct BudgetRow {
    pub node: String,
    pub cpp_nm: f64,
    pub mp_nm: f64,
    pub sram_area_um2: f64,
    pub max_tiles: u32,
}

pub fn roadmap_budget(entries: &[SramRoadmapEntry]) -> Result<Vec<BudgetRow>> {
    entries
        .iter()
        .map(|e| {
            e.validate()?;
            Ok(BudgetRow {
                node: e.node_label.clone(),
                cpp_nm: e.cpp,
                mp_nm: e.mp,
                sram_area_um2: e.sram_area_um2,
                max_tiles: cross_node_budget(e),
            })
        })
        .collect()
}

/// Resistance of a bitline spanning `rows` cells of the given configuration [Ω].
pub fn bitline_resistance(config: ConfigId, rows: u32, tech: &TechNode, layout: &CellLayout) -> Result<f64> {
    if rows == 0 {
        return Err(Error::param("rows", "must be >= 1"));
    }
    let width_nm = layout.dims(config).width_cpp as f64 * tech.cpp;
    Ok(rows as f64 * width_nm * tech.bl_resistance_per_length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn geo(c: ConfigId) -> CellGeometry {
        bitcell_geometry(c, &TechNode::n7(), &CellLayout::default())
    }

    #[test]
    fn default_widths() {
        assert_eq!(geo(ConfigId::TwoT1rFv).width_cpp, 2);
        assert_eq!(geo(ConfigId::TwoT1rRv).width_cpp, 4);
        assert_eq!(geo(ConfigId::OneT1r1t).width_cpp, 3);
        assert_eq!(geo(ConfigId::OneT1r1tVga).width_cpp, 3);
        assert_eq!(geo(ConfigId::OneT1d1r).width_cpp, 2);
    }

    #[test]
    fn area_ordering_and_sram_target() {
        let a = |c| geo(c).area_um2;
        assert!(a(ConfigId::OneT1d1r) < a(ConfigId::OneT1r1tVga));
        assert!(a(ConfigId::OneT1r1tVga) <= a(ConfigId::OneT1r1t));
        assert!(a(ConfigId::OneT1r1t) < a(ConfigId::TwoT1rRv));
        assert!(geo(ConfigId::OneT1d1r).meets_sram_target());
        assert_relative_eq!(a(ConfigId::OneT1d1r), 2.0 * 56.0 * 4.0 * 40.0 * 1e-6);
    }

    #[test]
    fn via_ratios() {
        assert_relative_eq!(via_aspect_ratio(335.0, 25.0).unwrap(), 13.4);
        assert_eq!(via_aspect_ratio(7.0, 7.0).unwrap(), 1.0);
        assert!(via_aspect_ratio(0.0, 25.0).is_err());
        assert!(via_aspect_ratio(335.0, -1.0).is_err());

        let stack = MtjStackGeometry::default();
        assert_relative_eq!(stack.stack_height_nm(), 335.0);
        let r = via_report(&stack, &TechNode::n7()).unwrap();
        assert!(r[0].integration_risk);
        assert_relative_eq!(r[1].aspect_ratio, 2.5);
        assert!(!r[1].integration_risk);
    }

    #[test]
    fn n7_budget() {
        let e = SramRoadmapEntry {
            node_label: "N7".into(),
            cpp: 56.0,
            mp: 40.0,
            sram_area_um2: SRAM_TARGET_UM2,
        };
        assert_eq!(cross_node_budget(&e), 9);
        assert!(8.0 * TechNode::n7().tile_um2() <= SRAM_TARGET_UM2);
        let unit = SramRoadmapEntry {
            sram_area_um2: 56.0 * 40.0 * 1e-6,
            ..e
        };
        assert_eq!(cross_node_budget(&unit), 1);
    }

    #[test]
    fn bitline_single_row_and_reference() {
        let mut tech = TechNode::n7();
        tech.bl_resistance_per_length = 0.0593;
        let l = CellLayout::default();
        assert_relative_eq!(
            bitline_resistance(ConfigId::OneT1d1r, 1, &tech, &l).unwrap(),
            2.0 * 56.0 * 0.0593
        );
        let rv = bitline_resistance(ConfigId::TwoT1rRv, 128, &tech, &l).unwrap();
        assert!((rv - 1700.0).abs() / 1700.0 < 0.01);
        let d = bitline_resistance(ConfigId::OneT1d1r, 128, &tech, &l).unwrap();
        assert!((d - 870.0).abs() / 870.0 < 0.05);
        assert!(bitline_resistance(ConfigId::OneT1d1r, 0, &tech, &l).is_err());
    }

    #[test]
    fn config_parse_round_trip() {
        for c in ConfigId::ALL {
            assert_eq!(c.as_str().parse::<ConfigId>().unwrap(), c);
            assert_eq!(c.as_str().to_lowercase().parse::<ConfigId>().unwrap(), c);
        }
        assert!("3T2R".parse::<ConfigId>().is_err());
    }
}
