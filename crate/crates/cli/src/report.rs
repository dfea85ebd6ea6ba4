use std::fmt;

use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    PropertyFailure = 1,
    InputError = 2,
    BudgetExhausted = 3,
}

impl Exit {
    fn name(self) -> &'static str {
        match self {
            Exit::Ok => "ok",
            Exit::PropertyFailure => "property-failure",
            Exit::InputError => "input-error",
            Exit::BudgetExhausted => "budget-exhausted",
        }
    }
}

/// One run's output: `key: value` lines, then `[section]` blocks.
pub struct RunReport {
    command: String,
    digest: Sha256,
    has_input: bool,
    fields: Vec<(String, String)>,
    sections: Vec<(String, String)>,
    pub exit: Exit,
}

impl RunReport {
    pub fn new(command: String) -> Self {
        RunReport {
            command,
            digest: Sha256::new(),
            has_input: false,
            fields: Vec::new(),
            sections: Vec::new(),
            exit: Exit::Ok,
        }
    }

    pub fn input(&mut self, bytes: &[u8]) {
        self.digest.update(bytes);
        self.has_input = true;
    }

    pub fn field(&mut self, key: &str, value: impl fmt::Display) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    pub fn section(&mut self, name: &str, body: impl Into<String>) {
        self.sections.push((name.to_string(), body.into()));
    }

    pub fn fail(&mut self, exit: Exit, msg: impl fmt::Display) {
        self.field("error", msg);
        self.exit = exit;
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command)?;
        if self.has_input {
            writeln!(f, "input_sha256: {}", hex::encode(self.digest.clone().finalize()))?;
        }
        for (k, v) in &self.fields {
            writeln!(f, "{k}: {v}")?;
        }
        writeln!(f, "outcome: {}", self.exit.name())?;
        writeln!(f, "exit_code: {}", self.exit as u8)?;
        for (name, body) in &self.sections {
            writeln!(f, "\n[{name}]")?;
            f.write_str(body)?;
            if !body.ends_with('\n') {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
