//! One module per scenario; each turns a [`RunConfig`] into a [`Report`].

mod hardy;
mod identities;
mod povm;
mod sweep;
mod twoslit;

pub use sweep::{sweep_coupling, SweepIdentity};

use crate::config::{RunConfig, Scenario};
use crate::report::Report;
use crate::CliError;

pub fn run_scenario(cfg: &RunConfig) -> Result<Report, CliError> {
    match cfg.scenario {
        Scenario::Hardy => hardy::run(cfg),
        Scenario::Twoslit => twoslit::run(cfg),
        Scenario::Identities => identities::run(cfg),
        Scenario::Povm => povm::run(cfg),
        Scenario::Sweep => sweep::run(cfg),
    }
}
