use crate::error::{Error, Result};
use crate::field::{make_field, FieldSpec};
use crate::params::{validate_params, ParamSet};

/// A field together with a validated parameter pair. Every computation in
/// the crate takes one of these.
#[derive(Clone, Debug)]
pub struct Context {
    pub field: FieldSpec,
    pub params: ParamSet,
    /// Lifts the per-strategy size guards.
    pub allow_large: bool,
}

impl Context {
    pub fn new(n: u32, k: u32) -> Result<Context> {
        let params = validate_params(n, k)?;
        let field = make_field(n)?;
        Ok(Context {
            field,
            params,
            allow_large: false,
        })
    }

    pub fn allow_large(mut self, allow: bool) -> Context {
        self.allow_large = allow;
        self
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn q(&self) -> u64 {
        self.params.q()
    }

    /// Fails with a size-guard error when `n` exceeds `max_n`, unless large runs are allowed.
    pub(crate) fn guard(&self, what: &str, max_n: u32) -> Result<()> {
        if self.params.n > max_n && !self.allow_large {
            return Err(Error::SizeGuard(format!(
                "{what} is limited to n <= {max_n}, got n = {}",
                self.params.n
            )));
        }
        Ok(())
    }
}
