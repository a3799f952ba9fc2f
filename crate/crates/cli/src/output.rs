use std::io::{self, Write};

use glob_kernel::report::CheckLine;

use crate::Format;

/// Serializes report lines through one stdout handle, flushing after each
/// line so long sweeps show progress.
pub struct Reporter {
    format: Format,
    out: io::Stdout,
    failures: usize,
}

impl Reporter {
    pub fn new(format: Format) -> Self {
        Reporter { format, out: io::stdout(), failures: 0 }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn check(&mut self, line: &CheckLine) -> io::Result<()> {
        if !line.passed() {
            self.failures += 1;
        }
        let text = match self.format {
            Format::Text => line.to_string(),
            Format::Json => line.to_json(),
        };
        self.raw(&text)
    }

    pub fn checks(&mut self, lines: &[CheckLine]) -> io::Result<()> {
        lines.iter().try_for_each(|l| self.check(l))
    }

    /// Plain text, shown in text mode only.
    pub fn note(&mut self, text: &str) -> io::Result<()> {
        match self.format {
            Format::Text => self.raw(text),
            Format::Json => Ok(()),
        }
    }

    pub fn raw(&mut self, text: &str) -> io::Result<()> {
        let mut handle = self.out.lock();
        writeln!(handle, "{text}")?;
        handle.flush()
    }

    pub fn clean(&self) -> bool {
        self.failures == 0
    }
}
