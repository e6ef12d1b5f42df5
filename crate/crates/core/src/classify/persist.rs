use serde::{Deserialize, Serialize};

use super::LinearModel;
use crate::error::{Error, Result};

pub const MODEL_FORMAT: &str = "senticite-linear-model";
pub const MODEL_VERSION: u32 = 1;

#[derive(Serialize)]
struct ModelFileRef<'a> {
    format: &'a str,
    version: u32,
    model: &'a LinearModel,
}

#[derive(Deserialize)]
struct Header {
    format: String,
    version: u32,
}

#[derive(Deserialize)]
struct ModelFile {
    model: LinearModel,
}

/// Serializes a model as pretty-printed JSON. Output is byte-identical for
/// equal models.
pub fn save_model(model: &LinearModel) -> Result<Vec<u8>> {
    if let Some(c) = model
        .classes
        .iter()
        .find(|c| !c.bias.is_finite() || c.weights.values().any(|w| !w.is_finite()))
    {
        return Err(Error::InvalidArgument(format!(
            "class `{}` has non-finite weights",
            c.label
        )));
    }
    let file = ModelFileRef {
        format: MODEL_FORMAT,
        version: MODEL_VERSION,
        model,
    };
    let mut out = serde_json::to_vec_pretty(&file).expect("model serializes");
    out.push(b'\n');
    Ok(out)
}

pub fn load_model(bytes: &[u8]) -> Result<LinearModel> {
    let header: Header = serde_json::from_slice(bytes).map_err(|e| format_error(bytes, &e))?;
    if header.format != MODEL_FORMAT {
        return Err(Error::Format {
            offset: 0,
            message: format!("unexpected format tag `{}`", header.format),
        });
    }
    if header.version != MODEL_VERSION {
        return Err(Error::UnsupportedVersion {
            found: header.version,
            expected: MODEL_VERSION,
        });
    }
    let file: ModelFile = serde_json::from_slice(bytes).map_err(|e| format_error(bytes, &e))?;
    let model = file.model;
    if model.classes.is_empty() {
        return Err(Error::Format {
            offset: 0,
            message: "model has no classes".into(),
        });
    }
    if let Some(c) = model.classes.iter().find(|c| c.label.task() != model.task) {
        return Err(Error::Format {
            offset: 0,
            message: format!("label `{}` does not belong to task {}", c.label, model.task),
        });
    }
    Ok(model)
}

fn format_error(bytes: &[u8], e: &serde_json::Error) -> Error {
    Error::Format {
        offset: byte_offset(bytes, e.line(), e.column()),
        message: e.to_string(),
    }
}

fn byte_offset(bytes: &[u8], line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let line_start = bytes
        .iter()
        .enumerate()
        .filter(|(_, b)| **b == b'\n')
        .nth(line.saturating_sub(2))
        .map(|(i, _)| i + 1)
        .filter(|_| line > 1)
        .unwrap_or(0);
    (line_start + column.saturating_sub(1)).min(bytes.len())
}
