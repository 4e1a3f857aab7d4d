use std::fs;

use gtc_core::figures::{self, InputDoc};
use gtc_core::FieldSpec;

use crate::commands::CliError;
use crate::{FieldArgs, Source};

pub fn load(source: &Source) -> Result<InputDoc, CliError> {
    match (&source.file, &source.figure) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
            InputDoc::parse(&text).map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))
        }
        (None, Some(name)) => figures::by_name(name)
            .map(|f| f.doc)
            .ok_or_else(|| CliError::BadInput(format!("unknown figure {name:?} (figure1 .. figure4)"))),
        (None, None) => Err(CliError::BadInput("give an input file or --figure".into())),
    }
}

/// The field named by the flags, falling back to the document.
pub fn field(doc: &InputDoc, args: &FieldArgs) -> Result<FieldSpec, CliError> {
    let p = args
        .p
        .or(doc.p)
        .ok_or_else(|| CliError::BadInput("no characteristic: pass --p or set \"p\"".into()))?;
    let h = args.h.or(doc.h).unwrap_or(1);
    Ok(FieldSpec::new(p, h)?)
}

/// A field element as a polynomial in `u` over GF(p), or an integer when `h = 1`.
pub fn element_string(field: &FieldSpec, repr: u32) -> String {
    if field.h() == 1 {
        return repr.to_string();
    }
    let p = field.p();
    let mut digits = Vec::new();
    let mut r = repr;
    for _ in 0..field.h() {
        digits.push(r % p);
        r /= p;
    }
    polynomial_string(&digits, "u")
}

/// `c_0 + c_1 u + ...` written from the top degree down.
pub fn polynomial_string(coeffs: &[u32], var: &str) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
