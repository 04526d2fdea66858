use std::fs;
use std::path::Path;

use nlmc_core::families::{
    excluded_products_fn, field_mult_fn, gold_fn, indicator_fn, inner_product_fn, FieldSpec, GoldSpec,
};
use nlmc_core::{BooleanFunction, Circuit, GeneratorMatrix};

use crate::CliError;

const BUILTINS: [&str; 5] = ["ip", "gold", "fieldmult", "exprod", "indicator"];

fn num<T: std::str::FromStr>(spec: &str, field: &str) -> Result<T, CliError> {
    field
        .parse()
        .map_err(|_| CliError::Usage(format!("`{spec}`: `{field}` is not a number")))
}

/// Parses `ip:<k>`, `gold:<n>[:<i>]`, `fieldmult:<n>`, `exprod:<n>`, `indicator:<n>:<z>`.
pub fn builtin(spec: &str) -> Result<BooleanFunction, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let f = match parts.as_slice() {
        ["ip", k] => inner_product_fn(num(spec, k)?)?,
        ["gold", n] => {
            let n = num(spec, n)?;
            gold_fn(&GoldSpec::with_default_exponent(n)?, &FieldSpec::default_for(n)?)?
        }
        ["gold", n, i] => {
            let n = num(spec, n)?;
            gold_fn(&GoldSpec::new(n, num(spec, i)?)?, &FieldSpec::default_for(n)?)?
        }
        ["fieldmult", n] => field_mult_fn(&FieldSpec::default_for(num(spec, n)?)?)?,
        ["exprod", n] => excluded_products_fn(num(spec, n)?)?,
        ["indicator", n, z] => indicator_fn(num(spec, z)?, num(spec, n)?)?,
        _ => {
            return Err(CliError::Usage(format!(
                "`{spec}` is not a builtin; expected ip:<k>, gold:<n>[:<i>], fieldmult:<n>, exprod:<n> or indicator:<n>:<z>"
            )))
        }
    };
    Ok(f)
}

pub fn read_text(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

/// A builtin spec when the text before the first `:` names one and no such
/// file exists; otherwise a truth-table file.
pub fn function(source: &str) -> Result<BooleanFunction, CliError> {
    let head = source.split(':').next().unwrap_or("");
    if BUILTINS.contains(&head) && !Path::new(source).exists() {
        return builtin(source);
    }
    Ok(BooleanFunction::parse_tt(&read_text(source)?)?)
}

pub fn circuit(path: &str) -> Result<Circuit, CliError> {
    Ok(Circuit::parse(&read_text(path)?)?)
}

pub fn code(path: &str) -> Result<GeneratorMatrix, CliError> {
    Ok(GeneratorMatrix::parse(&read_text(path)?)?)
}
