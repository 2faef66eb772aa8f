use thiserror::Error;

/// Errors raised before or during a solver run.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("integrand returned {value} at {at}")]
    Evaluation { value: f64, at: String },
    #[error("{message} (exit code {code})")]
    Hyperbox { code: u8, message: &'static str },
    #[error("data file {name}: {message}")]
    Data { name: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

/// Fails on the first NaN or infinite value.
pub(crate) fn check_finite(values: &[f64], describe: impl Fn(usize) -> String) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::Evaluation {
            value: values[i],
            at: describe(i),
        }),
        None => Ok(()),
    }
}
