//! Platform table: the radio constants of every platform, loaded from a
//! versioned TOML file.

use std::collections::BTreeMap;
use std::path::Path;

use rescuenet_core::{LinkParams, Mount, PlatformProfile};
use serde::Deserialize;

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// The table shipped with the simulator.
pub const DEFAULT_TABLE: &str = include_str!("../data/platforms.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    format_version: u32,
    #[serde(default)]
    platform: BTreeMap<String, PlatformEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlatformEntry {
    transmit_power_w: f64,
    altitude_km: f64,
    terrestrial: Option<LinkEntry>,
    los: Option<LinkEntry>,
    nlos: Option<LinkEntry>,
}

#[derive(Debug, Deserialize, Clone, Copy)]
#[serde(deny_unknown_fields)]
struct LinkEntry {
    path_loss_exponent: f64,
    nakagami_m: f64,
    excess_loss: f64,
}

impl From<LinkEntry> for LinkParams {
    fn from(e: LinkEntry) -> Self {
        LinkParams::new(e.path_loss_exponent, e.nakagami_m, e.excess_loss)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlatformTable {
    platforms: BTreeMap<String, PlatformProfile>,
}

impl PlatformTable {
    pub fn builtin() -> Self {
        Self::parse(DEFAULT_TABLE).expect("bundled platform table is valid")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: TableFile =
            toml::from_str(text).map_err(|e| Error::PlatformTable(e.to_string()))?;
        if file.format_version != FORMAT_VERSION {
            return Err(Error::PlatformTable(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                file.format_version
            )));
        }
        let mut platforms = BTreeMap::new();
        for (name, entry) in file.platform {
            let profile = to_profile(&name, &entry)?;
            profile
                .validate()
                .map_err(|e| Error::PlatformTable(format!("platform `{name}`: {e}")))?;
            platforms.insert(name, profile);
        }
        Ok(Self { platforms })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            Error::PlatformTable(msg) => Error::PlatformTable(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Built-in platforms, with entries from `other` added or replacing
    /// those of the same name.
    pub fn merged(mut self, other: PlatformTable) -> Self {
        self.platforms.extend(other.platforms);
        self
    }

    pub fn get(&self, name: &str) -> Option<&PlatformProfile> {
        self.platforms.get(name)
    }

    /// Looks up `name`, reporting `field` if it is missing.
    pub fn resolve(&self, field: &str, name: &str) -> Result<PlatformProfile> {
        self.get(name).cloned().ok_or_else(|| {
            let known: Vec<&str> = self.names().collect();
            Error::config(
                field,
                format!("unknown platform `{name}` (known: {})", known.join(", ")),
            )
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.platforms.keys().map(String::as_str)
    }
}

fn to_profile(name: &str, entry: &PlatformEntry) -> Result<PlatformProfile> {
    let missing =
        |block: &str| Error::PlatformTable(format!("platform `{name}` needs a `{block}` block"));
    let mount = if entry.altitude_km == 0.0 {
        if entry.los.is_some() || entry.nlos.is_some() {
            return Err(Error::PlatformTable(format!(
                "platform `{name}` is terrestrial; use a `terrestrial` block only"
            )));
        }
        Mount::Ground(
            entry
                .terrestrial
                .ok_or_else(|| missing("terrestrial"))?
                .into(),
        )
    } else {
        if entry.terrestrial.is_some() {
            return Err(Error::PlatformTable(format!(
                "platform `{name}` is aerial; use `los` and `nlos` blocks"
            )));
        }
        Mount::Aerial {
            altitude: entry.altitude_km,
            los: entry.los.ok_or_else(|| missing("los"))?.into(),
            nlos: entry.nlos.ok_or_else(|| missing("nlos"))?.into(),
        }
    };
    Ok(PlatformProfile {
        name: name.to_string(),
        transmit_power: entry.transmit_power_w,
        mount,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_matches_builtin_profiles() {
        let table = PlatformTable::builtin();
        for p in PlatformProfile::builtin() {
            assert_eq!(table.get(&p.name), Some(&p));
        }
        assert_eq!(table.names().count(), 4);
    }

    #[test]
    fn user_platforms_extend_the_table() {
        let extra = PlatformTable::parse(
            r#"
format_version = 1
[platform.blimp]
transmit_power_w = 5.0
altitude_km = 1.2
los = { path_loss_exponent = 2.0, nakagami_m = 2.0, excess_loss = 0.692 }
nlos = { path_loss_exponent = 3.0, nakagami_m = 1.0, excess_loss = 0.005 }
"#,
        )
        .unwrap();
        let table = PlatformTable::builtin().merged(extra);
        assert_eq!(table.get("blimp").unwrap().altitude(), 1.2);
        assert!(table.get("hap").is_some());
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let cases = [
            "format_version = 2",
            "format_version = 1\n[platform.x]\ntransmit_power_w = 1.0\naltitude_km = 0.3\n",
            "format_version = 1\n[platform.x]\ntransmit_power_w = -1.0\naltitude_km = 0.0\nterrestrial = { path_loss_exponent = 3.0, nakagami_m = 1.0, excess_loss = 0.5 }\n",
            "format_version = 1\n[platform.x]\ntransmit_power_w = 1.0\naltitude_km = 0.0\nterrestrial = { path_loss_exponent = 3.0, nakagami_m = 1.0, excess_loss = 1.5 }\n",
            "format_version = 1\n[platform.x]\ntransmit_power_w = 1.0\naltitude_km = 0.0\ncolour = 3\n",
        ];
        for text in cases {
            assert!(PlatformTable::parse(text).is_err(), "{text}");
        }
    }

    #[test]
    fn unknown_platform_names_the_field() {
        let err = PlatformTable::builtin()
            .resolve("fleet.platform", "zeppelin")
            .unwrap_err();
        assert!(err.to_string().contains("fleet.platform"));
        assert!(err.to_string().contains("zeppelin"));
    }
}
