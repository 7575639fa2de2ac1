use crate::error::{Error, Result};

/// Operating points of a score-threshold detector.
#[derive(Debug, Clone, PartialEq)]
pub struct RocResult {
    /// `+∞` first, then the distinct scores in descending order.
    pub thresholds: Vec<f64>,
    pub fpr: Vec<f64>,
    pub tpr: Vec<f64>,
    pub auc: f64,
}

/// A sample is flagged positive when `score >= threshold`.
pub fn roc_and_auc(scores: &[f64], labels: &[bool]) -> Result<RocResult> {
    if scores.len() != labels.len() {
        return Err(Error::InvalidInput(format!("{} scores but {} labels", scores.len(), labels.len())));
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::InvalidInput("scores contain NaN".into()));
    }
    let pos = labels.iter().filter(|&&l| l).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::InvalidInput(format!("need both classes, got {pos} positive and {neg} negative labels")));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    let mut roc = RocResult { thresholds: vec![f64::INFINITY], fpr: vec![0.0], tpr: vec![0.0], auc: 0.0 };
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut i = 0;
    while i < order.len() {
        let t = scores[order[i]];
        while i < order.len() && scores[order[i]] == t {
            if labels[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        roc.thresholds.push(t);
        roc.fpr.push(fp as f64 / neg as f64);
        roc.tpr.push(tp as f64 / pos as f64);
    }
    roc.auc = roc.fpr.windows(2).zip(roc.tpr.windows(2)).map(|(f, t)| (f[1] - f[0]) * (t[1] + t[0]) / 2.0).sum();
    Ok(roc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_inverted_and_tied() {
        assert_eq!(roc_and_auc(&[0.9, 0.1], &[true, false]).unwrap().auc, 1.0);
        assert_eq!(roc_and_auc(&[0.9, 0.1], &[false, true]).unwrap().auc, 0.0);
        let tie = roc_and_auc(&[0.5, 0.5], &[true, false]).unwrap();
        assert_eq!(tie.auc, 0.5);
        assert_eq!(tie.fpr, vec![0.0, 1.0]);
    }

    #[test]
    fn degenerate_labels_rejected() {
        assert!(roc_and_auc(&[0.1, 0.2], &[true, true]).is_err());
        assert!(roc_and_auc(&[0.1], &[true, false]).is_err());
        assert!(roc_and_auc(&[f64::NAN, 0.2], &[true, false]).is_err());
    }

    #[test]
    fn curve_is_monotone() {
        let scores = [0.3, 0.8, 0.3, 0.1, 0.9, 0.5];
        let labels = [false, true, true, false, false, true];
        let r = roc_and_auc(&scores, &labels).unwrap();
        assert!(r.fpr.windows(2).all(|w| w[0] <= w[1]));
        assert!(r.tpr.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*r.fpr.last().unwrap(), 1.0);
        assert_eq!(*r.tpr.last().unwrap(), 1.0);
        // 9 pos/neg pairs: five wins, one tie
        assert!((r.auc - 5.5 / 9.0).abs() < 1e-15);
    }
}
