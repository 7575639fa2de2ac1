//! End-to-end pipelines built on the inference and learning layers.

pub mod bicluster;
pub mod cluster;
pub mod novelty;
pub mod roc;
pub mod topics;

pub use bicluster::{
    bicluster_batch, bicluster_online, matched_cosines, synthetic_bicluster, BatchFactor, BiclusterConfig,
    BiclusterOutput, PlantedBicluster, PlantedBiclusterSpec,
};
pub use cluster::{kmeans, purity, KMeans};
pub use novelty::{novelty_pipeline, novelty_score, NoveltyConfig, NoveltyReport, ScoreOptions, StepReport};
pub use roc::{roc_and_auc, RocResult};
pub use topics::{synthetic_topic_stream, LabeledBlock, TopicStream, TopicStreamSpec};
