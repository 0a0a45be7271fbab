//! Material lookup and the `materials` subcommand.

use std::env;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::output::{write_table, Format, OutputRecord, Quantity};
use super::{Outcome, MATERIAL_PATH_VAR};
use crate::error::{Error, Result};
use crate::medium::{builtin_material, load_material, FluidMedium, BUILTIN_MATERIALS};

fn search_dirs() -> Vec<PathBuf> {
    env::var_os(MATERIAL_PATH_VAR)
        .map(|v| env::split_paths(&v).collect())
        .unwrap_or_default()
}

/// Where a material came from.
pub(crate) fn locate(spec: &str) -> Option<PathBuf> {
    let direct = Path::new(spec);
    if direct.is_file() {
        return Some(direct.to_path_buf());
    }
    for dir in search_dirs() {
        for cand in [dir.join(spec), dir.join(format!("{spec}.mat"))] {
            if cand.is_file() {
                return Some(cand);
            }
        }
    }
    None
}

/// Built-in name first, then a file path, then the search path.
pub(crate) fn resolve(spec: &str) -> Result<(FluidMedium, String)> {
    if BUILTIN_MATERIALS.contains(&spec) {
        return Ok((builtin_material(spec)?, "builtin".into()));
    }
    match locate(spec) {
        Some(path) => Ok((load_material(&path)?, path.display().to_string())),
        None => {
            let mut available: Vec<String> =
                BUILTIN_MATERIALS.iter().map(|s| s.to_string()).collect();
            available.extend(file_materials().into_iter().map(|(n, _)| n));
            Err(Error::UnknownMaterial {
                name: spec.into(),
                available,
            })
        }
    }
}

fn file_materials() -> Vec<(String, PathBuf)> {
    let mut out = Vec::new();
    for dir in search_dirs() {
        let Ok(entries) = std::fs::read_dir(&dir) else {
            continue;
        };
        let mut found: Vec<_> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "mat"))
            .collect();
        found.sort();
        for p in found {
            if let Some(stem) = p.file_stem() {
                out.push((stem.to_string_lossy().into_owned(), p));
            }
        }
    }
    out
}

pub(crate) fn list(out: &mut dyn Write, format: Format) -> Result<Outcome> {
    let mut rows: Vec<(String, String)> = BUILTIN_MATERIALS
        .iter()
        .map(|n| (n.to_string(), "builtin".to_string()))
        .collect();
    rows.extend(
        file_materials()
            .into_iter()
            .map(|(n, p)| (n, p.display().to_string())),
    );
    let io = |e: std::io::Error| Error::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    };
    match format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(n, s)| serde_json::json!({"name": n, "source": s}))
                .collect();
            serde_json::to_writer_pretty(&mut *out, &v).map_err(|e| io(e.into()))?;
            writeln!(out).map_err(io)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["name", "source"])
                .map_err(|e| io(e.into()))?;
            for (n, s) in &rows {
                w.write_record([n, s]).map_err(|e| io(e.into()))?;
            }
            w.flush().map_err(io)?;
        }
        Format::Table => {
            let mut table = vec![vec!["name".to_string(), "source".to_string()]];
            table.extend(rows.into_iter().map(|(n, s)| vec![n, s]));
            write_table(out, &table).map_err(io)?;
        }
    }
    Ok(Outcome::Done)
}

pub(crate) fn show(spec: &str, err: &mut dyn Write) -> Result<Outcome> {
    let (m, source) = match resolve(spec) {
        Ok(found) => found,
        Err(Error::Validation(violations)) => {
            let _ = writeln!(err, "error: material `{spec}` is invalid:");
            for v in violations {
                let _ = writeln!(err, "  - {v}");
            }
            return Ok(Outcome::Failed);
        }
        Err(e) => return Err(e),
    };
    Ok(Outcome::Records(property_records(&m, &source)))
}

fn property_records(m: &FluidMedium, source: &str) -> Vec<OutputRecord> {
    let mut props = vec![
        ("rho0", m.rho0, "kg/m³"),
        ("cS", m.sound_speed, "m/s"),
        ("eta", m.refractive_index, "1"),
        ("epsilon0", m.epsilon0, "1"),
        ("rho0·dε/dρ0", m.depsilon_drho, "1"),
    ];
    if let Some(cp) = m.heat_capacity {
        props.push(("cP", cp, "J/(kg·K)"));
    }
    if let Some(d) = m.depsilon_dt {
        props.push(("dε/dT", d, "1/K"));
    }
    props.push(("T_ref", m.default_temperature, "K"));
    props
        .into_iter()
        .map(|(name, value, unit)| OutputRecord {
            inputs: vec![
                Quantity::text("material", &m.name),
                Quantity::text("property", name),
            ],
            value,
            unit: unit.into(),
            formula: "material-property".into(),
            provenance: source.into(),
        })
        .collect()
}
