use crate::time::Period;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QueryError {
    #[error("persons must contain at least one non-empty name")]
    NoPersons,
    #[error("{field} must be within [0, 1], got {value}")]
    ThresholdOutOfRange { field: &'static str, value: f64 },
    #[error("max_entries must be at least 1")]
    ZeroMaxEntries,
    #[error("{field} must be at least 1 day")]
    ZeroDays { field: &'static str },
    #[error("window_days is required for dynamic graphs")]
    MissingWindow,
}

/// Person list, time period and the user filters for one graph request.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphQuery {
    persons: Vec<String>,
    period: Period,
    max_entries: Option<usize>,
    min_entry_weight: f64,
    min_edge_weight: f64,
    window_days: Option<u32>,
}

impl GraphQuery {
    pub fn new<I, S>(persons: I, period: Period) -> Result<Self, QueryError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = persons
            .into_iter()
            .map(|p| p.into().split_whitespace().collect::<Vec<_>>().join(" "))
            .collect();
        if names.is_empty() || names.iter().any(String::is_empty) {
            return Err(QueryError::NoPersons);
        }
        let mut seen = std::collections::HashSet::new();
        names.retain(|n| seen.insert(n.clone()));
        Ok(Self {
            persons: names,
            period,
            max_entries: None,
            min_entry_weight: 0.0,
            min_edge_weight: 0.0,
            window_days: None,
        })
    }

    /// Caps the number of entries considered (chronologically earliest
    /// first). In dynamic graphs the cap applies per frame.
    pub fn with_max_entries(mut self, max_entries: Option<usize>) -> Result<Self, QueryError> {
        if max_entries == Some(0) {
            return Err(QueryError::ZeroMaxEntries);
        }
        self.max_entries = max_entries;
        Ok(self)
    }

    /// Drops entries whose weight `1/n` is below the threshold.
    pub fn with_min_entry_weight(mut self, value: f64) -> Result<Self, QueryError> {
        self.min_entry_weight = unit_interval("min_entry_weight", value)?;
        Ok(self)
    }

    /// Drops edges whose normalised weight is below the threshold.
    pub fn with_min_edge_weight(mut self, value: f64) -> Result<Self, QueryError> {
        self.min_edge_weight = unit_interval("min_edge_weight", value)?;
        Ok(self)
    }

    pub fn with_window_days(mut self, days: u32) -> Result<Self, QueryError> {
        if days == 0 {
            return Err(QueryError::ZeroDays { field: "window_days" });
        }
        self.window_days = Some(days);
        Ok(self)
    }

    pub fn persons(&self) -> &[String] {
        &self.persons
    }

    pub fn period(&self) -> &Period {
        &self.period
    }

    pub fn max_entries(&self) -> Option<usize> {
        self.max_entries
    }

    pub fn min_entry_weight(&self) -> f64 {
        self.min_entry_weight
    }

    pub fn min_edge_weight(&self) -> f64 {
        self.min_edge_weight
    }

    pub fn window_days(&self) -> Option<u32> {
        self.window_days
    }

    pub fn is_queried(&self, person: &str) -> bool {
        self.persons.iter().any(|p| p == person)
    }
}

fn unit_interval(field: &'static str, value: f64) -> Result<f64, QueryError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(QueryError::ThresholdOutOfRange { field, value })
    }
}
