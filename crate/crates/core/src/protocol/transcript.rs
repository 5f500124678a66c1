//! Ordered event log of a protocol run and its line-oriented text form.
//!
//! Schema (version 1), one record per line:
//!
//! ```text
//! # cointoss-transcript v1
//! seed=<u64> target=<0|1|-> outcome=<heads|tails|abort>
//! index=<n> sender=<alice|bob> kind=<kind> payload=<payload> probability=<p|->
//! ...
//! ```
//!
//! `kind` is one of `state_transfer` (payload: comma-separated labels),
//! `choice` (payload: 1 or 2), `measurement` (payload: `<label>:<bit>`),
//! `qubit_transfer` (payload: label), `verdict_pass` / `verdict_abort`
//! (payload: `-`). `probability` is the realized branch probability printed
//! with 12 significant digits, or `-` for deterministic messages.

use std::fmt::Write as _;

use super::message::{Choice, Message, ProtocolOutcome, SentMessage};
use crate::error::{Error, Result};
use crate::qstate::{Bit, Label, Party};

pub const TRANSCRIPT_HEADER: &str = "# cointoss-transcript v1";

/// A measurement as it appears in the log; the posterior state is dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementSummary {
    pub party: Party,
    pub label: Label,
    pub outcome: Bit,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Event {
    Message {
        sent: SentMessage,
        probability: Option<f64>,
    },
    Measurement(MeasurementSummary),
}

impl Event {
    pub fn message(sender: Party, message: Message) -> Self {
        Event::Message {
            sent: SentMessage { sender, message },
            probability: None,
        }
    }

    pub fn as_message(&self) -> Option<&Message> {
        match self {
            Event::Message { sent, .. } => Some(&sent.message),
            Event::Measurement(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Transcript {
    pub seed: u64,
    pub target: Option<Bit>,
    pub events: Vec<Event>,
    pub outcome: ProtocolOutcome,
}

/// Formats `x` with 12 significant digits in positional notation.
pub fn format_probability(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    // Take the exponent after rounding so 0.0999999999999 and 0.1 agree.
    let sci = format!("{x:.11e}");
    let magnitude: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

impl Transcript {
    pub fn messages(&self) -> impl Iterator<Item = &SentMessage> {
        self.events.iter().filter_map(|e| match e {
            Event::Message { sent, .. } => Some(sent),
            Event::Measurement(_) => None,
        })
    }

    pub fn measurements(&self) -> impl Iterator<Item = &MeasurementSummary> {
        self.events.iter().filter_map(|e| match e {
            Event::Measurement(m) => Some(m),
            Event::Message { .. } => None,
        })
    }

    /// True when messages follow state transfer, choice, qubit transfer,
    /// verdict, each exactly once.
    pub fn is_well_ordered(&self) -> bool {
        let steps: Vec<u8> = self.messages().map(|m| m.message.step()).collect();
        steps == [0, 1, 2, 3]
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(TRANSCRIPT_HEADER);
        out.push('\n');
        let target = self
            .target
            .map_or_else(|| "-".to_string(), |b| b.to_string());
        let _ = writeln!(
            out,
            "seed={} target={} outcome={}",
            self.seed, target, self.outcome
        );
        for (index, event) in self.events.iter().enumerate() {
            let (sender, kind, payload, probability) = match event {
                Event::Message { sent, probability } => {
                    let payload = match &sent.message {
                        Message::StateTransfer(labels) => labels
                            .iter()
                            .map(Label::to_string)
                            .collect::<Vec<_>>()
                            .join(","),
                        Message::ChoiceAnnouncement(c) => c.number().to_string(),
                        Message::QubitTransfer(l) => l.to_string(),
                        Message::VerdictPass | Message::VerdictAbort => "-".to_string(),
                    };
                    (sent.sender, sent.message.kind(), payload, *probability)
                }
                Event::Measurement(m) => (
                    m.party,
                    "measurement",
                    format!("{}:{}", m.label, m.outcome),
                    Some(m.probability),
                ),
            };
            let probability = probability.map_or_else(|| "-".to_string(), format_probability);
            let _ = writeln!(
                out,
                "index={index} sender={sender} kind={kind} payload={payload} probability={probability}"
            );
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidArgument(format!("transcript: {msg}"));
        let mut lines = text.lines();
        if lines.next() != Some(TRANSCRIPT_HEADER) {
            return Err(bad("missing header"));
        }
        let head = fields(lines.next().ok_or_else(|| bad("missing run line"))?)?;
        let seed = field(&head, "seed")?.parse().map_err(|_| bad("bad seed"))?;
        let target = match field(&head, "target")? {
            "-" => None,
            s => Some(s.parse()?),
        };
        let outcome = field(&head, "outcome")?.parse()?;

        let mut events = Vec::new();
        for (expected, line) in lines.enumerate() {
            let rec = fields(line)?;
            let index: usize = field(&rec, "index")?
                .parse()
                .map_err(|_| bad("bad index"))?;
            if index != expected {
                return Err(bad("indices out of order"));
            }
            let sender: Party = field(&rec, "sender")?.parse()?;
            let payload = field(&rec, "payload")?;
            let probability = match field(&rec, "probability")? {
                "-" => None,
                s => Some(s.parse::<f64>().map_err(|_| bad("bad probability"))?),
            };
            let message = match field(&rec, "kind")? {
                "measurement" => {
                    let (label, bit) = payload.split_once(':').ok_or_else(|| bad("bad payload"))?;
                    events.push(Event::Measurement(MeasurementSummary {
                        party: sender,
                        label: label.parse()?,
                        outcome: bit.parse()?,
                        probability: probability
                            .ok_or_else(|| bad("measurement without probability"))?,
                    }));
                    continue;
                }
                "state_transfer" => Message::StateTransfer(
                    payload
                        .split(',')
                        .map(str::parse)
                        .collect::<Result<Vec<Label>>>()?,
                ),
                "choice" => Message::ChoiceAnnouncement(
                    payload
                        .parse()
                        .ok()
                        .and_then(Choice::from_number)
                        .ok_or_else(|| bad("bad choice"))?,
                ),
                "qubit_transfer" => Message::QubitTransfer(payload.parse()?),
                "verdict_pass" => Message::VerdictPass,
                "verdict_abort" => Message::VerdictAbort,
                other => return Err(bad(&format!("unknown kind `{other}`"))),
            };
            events.push(Event::Message {
                sent: SentMessage { sender, message },
                probability,
            });
        }
        Ok(Transcript {
            seed,
            target,
            events,
            outcome,
        })
    }
}

fn fields(line: &str) -> Result<Vec<(&str, &str)>> {
    line.split(' ')
        .map(|kv| {
            kv.split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("transcript: bad field `{kv}`")))
        })
        .collect()
}

fn field<'a>(rec: &[(&'a str, &'a str)], key: &str) -> Result<&'a str> {
    rec.iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::InvalidArgument(format!("transcript: missing field `{key}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_probability(0.75), "0.750000000000");
        assert_eq!(format_probability(5.0 / 6.0), "0.833333333333");
        assert_eq!(format_probability(1.0), "1.00000000000");
        assert_eq!(format_probability(0.0), "0");
        assert_eq!(format_probability(0.0125), "0.0125000000000");
        assert_eq!(
            format_probability(0.09999999999999999),
            format_probability(0.1)
        );
        assert_eq!(format_probability(0.09999999999999), "0.100000000000");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Transcript::parse("").is_err());
        assert!(
            Transcript::parse("# cointoss-transcript v1\nseed=x target=- outcome=heads").is_err()
        );
        let bad_kind = "# cointoss-transcript v1\nseed=1 target=- outcome=heads\n\
                        index=0 sender=bob kind=wave payload=- probability=-";
        assert!(Transcript::parse(bad_kind).is_err());
    }
}
