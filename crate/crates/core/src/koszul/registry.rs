use super::connection::{grassmann_connection, nabla0_connection, Connection};
use super::metric::Metric;
use super::solver::levi_civita;
use crate::error::{NcgError, Result};
use crate::triple::SpectralTriple;

/// A named way of producing a connection from a triple and a metric.
pub trait ConnectionStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn build(&self, triple: &SpectralTriple, metric: &Metric) -> Result<Connection>;
}

pub struct LeviCivitaStrategy;

impl ConnectionStrategy for LeviCivitaStrategy {
    fn name(&self) -> &'static str {
        "levi-civita"
    }
    fn description(&self) -> &'static str {
        "torsionless and metric-compatible, solved from the Koszul formula"
    }
    fn build(&self, triple: &SpectralTriple, metric: &Metric) -> Result<Connection> {
        levi_civita(triple, metric)
    }
}

pub struct GrassmannStrategy;

impl ConnectionStrategy for GrassmannStrategy {
    fn name(&self) -> &'static str {
        "grassmann"
    }
    fn description(&self) -> &'static str {
        "frame connection, zero on the basis; ignores the metric"
    }
    fn build(&self, triple: &SpectralTriple, _metric: &Metric) -> Result<Connection> {
        Ok(grassmann_connection(triple.dim_k))
    }
}

pub struct Nabla0Strategy;

impl ConnectionStrategy for Nabla0Strategy {
    fn name(&self) -> &'static str {
        "nabla0"
    }
    fn description(&self) -> &'static str {
        "Grassmann connection with its torsion removed; ignores the metric"
    }
    fn build(&self, triple: &SpectralTriple, _metric: &Metric) -> Result<Connection> {
        Ok(nabla0_connection(triple))
    }
}

pub struct ConnectionRegistry {
    entries: Vec<Box<dyn ConnectionStrategy>>,
}

impl Default for ConnectionRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl ConnectionRegistry {
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(LeviCivitaStrategy));
        r.register(Box::new(GrassmannStrategy));
        r.register(Box::new(Nabla0Strategy));
        r
    }

    /// Adds a strategy, replacing any existing one with the same name.
    pub fn register(&mut self, strategy: Box<dyn ConnectionStrategy>) {
        self.entries.retain(|s| s.name() != strategy.name());
        self.entries.push(strategy);
    }

    pub fn get(&self, name: &str) -> Result<&dyn ConnectionStrategy> {
        self.entries
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| NcgError::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }
}
