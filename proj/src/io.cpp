#include "rolecluster/io.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace rolecluster {

namespace {

using nlohmann::json;

[[noreturn]] void fail_at(const std::filesystem::path& path, std::size_t line,
                          const std::string& message) {
  throw InputError(path.string() + ":" + std::to_string(line) + ": " + message);
}

std::ifstream open_for_reading(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open " + path.string() + " for reading");
  }
  return in;
}

std::ofstream open_for_writing(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot open " + path.string() + " for writing");
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

std::vector<Segment> read_segments_jsonl(const std::filesystem::path& path,
                                         std::string* session_id_out) {
  std::ifstream in = open_for_reading(path);
  std::vector<Segment> segments;
  std::string session_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::parse_error& e) {
      fail_at(path, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!row.is_object()) fail_at(path, line_no, "expected a JSON object per line");

    try {
      Segment segment;
      segment.segment_id = row.at("segment_id").get<std::string>();
      segment.start_s = row.at("start_s").get<double>();
      segment.end_s = row.at("end_s").get<double>();
      const std::string row_session = row.at("session_id").get<std::string>();
      if (session_id.empty()) {
        session_id = row_session;
      } else if (session_id != row_session) {
        fail_at(path, line_no, "mixed session_id values ('" + session_id + "' vs '" +
                                   row_session + "')");
      }
      if (row.contains("speaker_id") && !row["speaker_id"].is_null()) {
        segment.speaker_id = row["speaker_id"].get<std::string>();
      }
      if (row.contains("role") && !row["role"].is_null()) {
        segment.role = row["role"].get<std::string>();
      }
      if (row.contains("role_confidence") && !row["role_confidence"].is_null()) {
        segment.role_confidence = row["role_confidence"].get<double>();
      }
      if (row.contains("word_count") && !row["word_count"].is_null()) {
        segment.word_count = row["word_count"].get<int>();
      }
      if (!(segment.end_s > segment.start_s)) {
        fail_at(path, line_no, "segment must have end_s > start_s");
      }
      if (segment.role_confidence &&
          (*segment.role_confidence < 0.0 || *segment.role_confidence > 1.0)) {
        fail_at(path, line_no, "role_confidence out of [0,1]");
      }
      segments.push_back(std::move(segment));
    } catch (const json::exception& e) {
      fail_at(path, line_no, std::string("bad segment record: ") + e.what());
    }
  }
  if (segments.empty()) {
    throw InputError(path.string() + ": no segments found");
  }
  std::set<std::string> ids;
  for (const auto& s : segments) {
    if (!ids.insert(s.segment_id).second) {
      throw InputError(path.string() + ": duplicate segment_id '" + s.segment_id + "'");
    }
  }
  if (session_id_out) *session_id_out = session_id;
  return segments;
}

void write_segments_jsonl(const std::filesystem::path& path, const std::string& session_id,
                          const std::vector<Segment>& segments) {
  std::ofstream out = open_for_writing(path);
  for (const auto& s : segments) {
    json row;
    row["session_id"] = session_id;
    row["segment_id"] = s.segment_id;
    row["start_s"] = s.start_s;
    row["end_s"] = s.end_s;
    if (s.speaker_id) row["speaker_id"] = *s.speaker_id;
    if (s.role) row["role"] = *s.role;
    if (s.role_confidence) row["role_confidence"] = *s.role_confidence;
    if (s.word_count) row["word_count"] = *s.word_count;
    out << row.dump() << "\n";
  }
}

std::vector<Embedding> read_embeddings_csv(const std::filesystem::path& path,
                                           std::vector<std::string>* segment_ids_out) {
  std::ifstream in = open_for_reading(path);
  std::vector<Embedding> embeddings;
  std::vector<std::string> segment_ids;
  std::string line;
  std::size_t line_no = 0;
  Eigen::Index dim = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (line_no == 1 && !fields.empty() && fields[0] == "segment_id") continue;  // header
    if (fields.size() < 3) {
      fail_at(path, line_no, "expected segment_id plus at least 2 vector components");
    }
    Embedding e;
    e.segment_index = static_cast<int>(embeddings.size());
    e.values.resize(static_cast<Eigen::Index>(fields.size()) - 1);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      try {
        std::size_t consumed = 0;
        e.values(static_cast<Eigen::Index>(f) - 1) = std::stod(fields[f], &consumed);
        if (consumed != fields[f].size()) throw std::invalid_argument(fields[f]);
      } catch (const std::exception&) {
        fail_at(path, line_no, "invalid number '" + fields[f] + "'");
      }
    }
    if (dim < 0) {
      dim = e.values.size();
    } else if (e.values.size() != dim) {
      fail_at(path, line_no, "embedding dimension " + std::to_string(e.values.size()) +
                                 " differs from " + std::to_string(dim));
    }
    const double norm = e.values.norm();
    if (norm < 1e-12) {
      fail_at(path, line_no, "zero-norm embedding");
    }
    e.values /= norm;
    segment_ids.push_back(fields[0]);
    embeddings.push_back(std::move(e));
  }
  if (embeddings.size() < 2) {
    throw InputError(path.string() + ": need at least 2 embeddings, found " +
                     std::to_string(embeddings.size()));
  }
  if (segment_ids_out) *segment_ids_out = std::move(segment_ids);
  return embeddings;
}

void write_embeddings_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& segment_ids,
                          const std::vector<Embedding>& embeddings) {
  if (segment_ids.size() != embeddings.size()) {
    throw InternalError("segment id / embedding count mismatch");
  }
  std::ofstream out = open_for_writing(path);
  const Eigen::Index dim = embeddings.empty() ? 0 : embeddings.front().values.size();
  out << "segment_id";
  for (Eigen::Index d = 0; d < dim; ++d) out << ",v" << d;
  out << "\n";
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    out << segment_ids[i];
    for (Eigen::Index d = 0; d < dim; ++d) out << "," << format_double(embeddings[i].values(d));
    out << "\n";
  }
}

LabeledTimeline read_rttm(const std::filesystem::path& path, std::string* file_id_out) {
  std::ifstream in = open_for_reading(path);
  std::vector<TimelineSegment> segments;
  std::string file_id;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::istringstream fields(line);
    std::string type;
    fields >> type;
    if (type != "SPEAKER") {
      std::cerr << "warning: " << path.string() << ":" << line_no << ": skipping '" << type
                << "' line\n";
      continue;
    }
    std::string channel, na1, na2, speaker;
    std::string tbeg_str, tdur_str;
    std::string id;
    fields >> id >> channel >> tbeg_str >> tdur_str >> na1 >> na2 >> speaker;
    if (fields.fail() || speaker.empty()) {
      fail_at(path, line_no, "malformed SPEAKER line");
    }
    double tbeg = 0.0, tdur = 0.0;
    try {
      tbeg = std::stod(tbeg_str);
      tdur = std::stod(tdur_str);
    } catch (const std::exception&) {
      fail_at(path, line_no, "invalid time fields '" + tbeg_str + "' / '" + tdur_str + "'");
    }
    if (!(tdur > 0.0)) {
      fail_at(path, line_no, "non-positive duration");
    }
    if (file_id.empty()) file_id = id;
    segments.push_back(TimelineSegment{tbeg, tbeg + tdur, speaker});
  }
  if (segments.empty()) {
    throw InputError(path.string() + ": no SPEAKER lines found");
  }
  if (file_id_out) *file_id_out = file_id;
  return LabeledTimeline(std::move(segments));
}

void write_rttm(const std::filesystem::path& path, const std::string& file_id,
                const LabeledTimeline& timeline) {
  std::ofstream out = open_for_writing(path);
  char buffer[64];
  for (const auto& s : timeline.segments()) {
    std::snprintf(buffer, sizeof(buffer), "%.3f %.3f", s.start_s, s.end_s - s.start_s);
    out << "SPEAKER " << file_id << " 1 " << buffer << " <NA> <NA> " << s.label << " <NA> <NA>\n";
  }
}

std::vector<PairConstraint> read_constraints_csv(const std::filesystem::path& path) {
  std::ifstream in = open_for_reading(path);
  std::vector<PairConstraint> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (line_no == 1 && !fields.empty() && fields[0] == "segment_i") continue;  // header
    if (fields.size() != 3) {
      fail_at(path, line_no, "expected 'segment_i,segment_j,kind'");
    }
    PairConstraint c;
    try {
      c.i = std::stoi(fields[0]);
      c.j = std::stoi(fields[1]);
    } catch (const std::exception&) {
      fail_at(path, line_no, "invalid segment indices");
    }
    if (fields[2] == "ML") {
      c.kind = ConstraintKind::kMustLink;
    } else if (fields[2] == "CL") {
      c.kind = ConstraintKind::kCannotLink;
    } else {
      fail_at(path, line_no, "kind must be ML or CL, got '" + fields[2] + "'");
    }
    pairs.push_back(c);
  }
  return pairs;
}

std::vector<RolePrediction> predictions_from_segments(const std::vector<Segment>& segments) {
  std::vector<RolePrediction> predictions;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    if (!s.role) continue;
    if (s.role->empty()) {
      throw InputError("segment '" + s.segment_id + "' has an empty role");
    }
    RolePrediction p;
    p.segment_index = static_cast<int>(i);
    p.role = *s.role;
    p.confidence = s.role_confidence.value_or(1.0);
    p.word_count = s.word_count.value_or(0);
    predictions.push_back(std::move(p));
  }
  return predictions;
}

std::optional<LabeledTimeline> reference_from_segments(const std::vector<Segment>& segments) {
  std::vector<TimelineSegment> timeline;
  for (const auto& s : segments) {
    if (s.speaker_id) timeline.push_back(TimelineSegment{s.start_s, s.end_s, *s.speaker_id});
  }
  if (timeline.empty()) return std::nullopt;
  return LabeledTimeline(std::move(timeline));
}

SessionBundle read_session_bundle(const std::filesystem::path& segments_path,
                                  const std::filesystem::path& embeddings_path,
                                  const std::optional<std::filesystem::path>& rttm_path) {
  SessionBundle bundle;
  bundle.segments = read_segments_jsonl(segments_path, &bundle.session_id);

  std::vector<std::string> embedding_ids;
  bundle.embeddings = read_embeddings_csv(embeddings_path, &embedding_ids);
  if (bundle.embeddings.size() != bundle.segments.size()) {
    throw InputError(embeddings_path.string() + ": " + std::to_string(bundle.embeddings.size()) +
                     " embeddings for " + std::to_string(bundle.segments.size()) + " segments");
  }
  for (std::size_t i = 0; i < embedding_ids.size(); ++i) {
    if (embedding_ids[i] != bundle.segments[i].segment_id) {
      throw InputError(embeddings_path.string() + ": row " + std::to_string(i + 1) +
                       " is for segment '" + embedding_ids[i] + "' but the segments file has '" +
                       bundle.segments[i].segment_id + "' at that position");
    }
  }

  bundle.predictions = predictions_from_segments(bundle.segments);
  if (rttm_path) {
    bundle.reference = read_rttm(*rttm_path);
  } else {
    bundle.reference = reference_from_segments(bundle.segments);
  }
  return bundle;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw InternalError("sha256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open " + path.string() + " for digest");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return sha256_hex(buffer.str());
}

}  // namespace rolecluster
