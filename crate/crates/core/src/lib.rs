//! Online dictionary learning over networks of agents that each own a
//! block of dictionary atoms.
//!
//! Inference is carried out on the dual of the sparse-coding problem, whose
//! objective splits into one term per agent; the agents minimize it with
//! projected adapt-then-combine diffusion and recover their own coefficients
//! locally. Dictionary blocks are then updated with proximal gradient steps
//! followed by a projection onto the constraint set.

pub mod apps;
pub mod error;
pub mod experiment;
pub mod inference;
pub mod io;
pub mod learner;
pub mod netsim;
pub mod prox;

pub use error::{Error, Result};
pub use inference::{
    centralized_inference_oracle, diffusion_solve, dual_value_consensus, infer, local_dual_cost, local_dual_grad,
    recover_coefficients, recover_signal, AgentRole, DictionaryShard, DiffusionOptions, DualState, InferenceOutcome,
    OracleSolution,
};
pub use learner::{
    dictionary_step, initialize_shards, learn_online, step_size_bound, LearnOutput, LearnerConfig, StepSchedule,
};
pub use netsim::{random_connected_graph, sync_round, Adjacency, CombinationMatrix, CombinationRule, Network, Workers};
pub use prox::{
    coeff_conjugate, project_dictionary_columns, project_inf_ball, prox_matrix_l1, residual_conjugate, residual_grad,
    soft_threshold, soft_threshold_plus, CoeffRegularizer, ConstraintSet, DictRegularizer, ResidualKind, TaskSpec,
};
