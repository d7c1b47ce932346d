#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ragmark/model.hpp"

namespace ragmark {

// JSONL ingestion. One interaction per line; blank lines are skipped.
// Errors carry the 1-based line number of the offending record.
std::vector<Interaction> parse_dataset(std::istream& in, bool expect_labels = false);
std::vector<Interaction> load_dataset(const std::string& path, bool expect_labels = false);

// Single-object parse, used by the ingest endpoint.
Interaction interaction_from_json_text(const std::string& text);

// Canonical serialization: stable field order, records end with '\n'.
// Parsing then writing reproduces the canonical form byte for byte.
std::string interaction_to_json(const Interaction& interaction);
void write_interactions(std::ostream& out, const std::vector<Interaction>& interactions);
void save_dataset(const std::string& path, const std::vector<Interaction>& interactions);

std::string record_to_json(const EvaluationRecord& record);
EvaluationRecord record_from_json(const std::string& text);
std::vector<EvaluationRecord> parse_records(std::istream& in);
std::vector<EvaluationRecord> load_records(const std::string& path);
void write_records(std::ostream& out, const std::vector<EvaluationRecord>& records);
void save_records(const std::string& path, const std::vector<EvaluationRecord>& records);

}  // namespace ragmark
