//! Synthetic streams of labeled documents drawn from sparse nonnegative topics.

use std::collections::BTreeSet;

use ndarray::{Array1, Array2};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TopicStreamSpec {
    /// Vocabulary size `M`.
    pub dim: usize,
    pub n_topics: usize,
    pub words_per_topic: usize,
    /// `schedule[s]` lists the topics first introduced in block `s`.
    pub schedule: Vec<Vec<usize>>,
    pub docs_per_step: usize,
    /// Share of a block's documents drawn from its new topics.
    pub novel_fraction: f64,
    pub noise: f64,
    pub seed: u64,
}

impl TopicStreamSpec {
    /// Eight topics over 200 words; three seed topics, then novelty at steps
    /// 1, 2, 5, 6 and 8.
    pub fn standard(seed: u64) -> Self {
        Self {
            dim: 200,
            n_topics: 8,
            words_per_topic: 25,
            schedule: vec![vec![0, 1, 2], vec![3], vec![4], vec![], vec![], vec![5], vec![6], vec![], vec![7]],
            docs_per_step: 100,
            novel_fraction: 0.3,
            noise: 0.02,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.n_topics == 0 || self.docs_per_step == 0 || self.schedule.is_empty() {
            return invalid("topic stream sizes must be positive");
        }
        if self.words_per_topic == 0 || self.words_per_topic > self.dim {
            return invalid(format!("words_per_topic must lie in 1..={}, got {}", self.dim, self.words_per_topic));
        }
        if !(0.0..=1.0).contains(&self.novel_fraction) || !(self.noise >= 0.0) {
            return invalid("novel_fraction must lie in [0, 1] and noise must be nonnegative");
        }
        let mut seen = BTreeSet::new();
        for (s, new) in self.schedule.iter().enumerate() {
            for &t in new {
                if t >= self.n_topics || !seen.insert(t) {
                    return invalid(format!("topic {t} in block {s} is out of range or repeated"));
                }
            }
        }
        if self.schedule[0].is_empty() {
            return invalid("the first block must introduce at least one topic");
        }
        Ok(())
    }
}

/// One block of documents (columns) with evaluation labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledBlock {
    pub docs: Array2<f64>,
    /// True when the document's topic did not appear in any earlier block.
    pub novel: Vec<bool>,
    pub topic: Vec<usize>,
}

impl LabeledBlock {
    pub fn has_both_labels(&self) -> bool {
        self.novel.iter().any(|&n| n) && self.novel.iter().any(|&n| !n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopicStream {
    /// Unit-norm topic vectors, `M × n_topics`.
    pub topics: Array2<f64>,
    pub blocks: Vec<LabeledBlock>,
}

/// Documents are jittered copies of one topic, optionally blended with a
/// second known topic, plus nonnegative noise, then ℓ2-normalized.
pub fn synthetic_topic_stream(spec: &TopicStreamSpec) -> Result<TopicStream> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let m = spec.dim;
    let mut topics = Array2::<f64>::zeros((m, spec.n_topics));
    let words: Vec<usize> = (0..m).collect();
    for t in 0..spec.n_topics {
        for &w in words.choose_multiple(&mut rng, spec.words_per_topic) {
            topics[[w, t]] = rng.random_range(0.2..1.0);
        }
        let norm = topics.column(t).dot(&topics.column(t)).sqrt();
        topics.column_mut(t).mapv_inplace(|v| v / norm);
    }

    let gauss = Normal::new(0.0, 1.0).expect("unit normal");
    let mut seen: Vec<usize> = Vec::new();
    let mut blocks = Vec::with_capacity(spec.schedule.len());
    for new in &spec.schedule {
        let n_novel = if seen.is_empty() {
            spec.docs_per_step
        } else if new.is_empty() {
            0
        } else {
            (spec.novel_fraction * spec.docs_per_step as f64).round() as usize
        };
        let mut plan: Vec<(usize, bool)> =
            (0..spec.docs_per_step)
                .map(|i| {
                    if i < n_novel {
                        (new[i % new.len()], true)
                    } else {
                        (seen[rng.random_range(0..seen.len())], false)
                    }
                })
                .collect();
        plan.shuffle(&mut rng);

        let mut docs = Array2::zeros((m, spec.docs_per_step));
        for (j, &(topic, novel)) in plan.iter().enumerate() {
            let mut doc = Array1::<f64>::zeros(m);
            for w in 0..m {
                let v = topics[[w, topic]];
                if v > 0.0 {
                    doc[w] = v * rng.random_range(0.5..1.5);
                }
            }
            // known-topic documents sometimes mention a second known topic
            if !novel && seen.len() > 1 && rng.random::<f64>() < 0.3 {
                let other = seen[rng.random_range(0..seen.len())];
                let weight = rng.random_range(0.1..0.5);
                doc.scaled_add(weight, &topics.column(other));
            }
            if spec.noise > 0.0 {
                for v in doc.iter_mut() {
                    *v += spec.noise * f64::abs(gauss.sample(&mut rng));
                }
            }
            let norm = doc.dot(&doc).sqrt();
            if norm > 0.0 {
                doc /= norm;
            }
            docs.column_mut(j).assign(&doc);
        }
        blocks.push(LabeledBlock {
            docs,
            novel: plan.iter().map(|&(_, n)| n).collect(),
            topic: plan.iter().map(|&(t, _)| t).collect(),
        });
        seen.extend(new.iter().copied());
    }
    Ok(TopicStream { topics, blocks })
}
