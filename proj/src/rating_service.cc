// Copyright 2026 The Auralkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "auralkit/rating_service.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"

namespace auralkit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr char kCsvHeader[] = "participant,trial,condition,rating,timestamp\n";

uint64_t Fnv1a(const std::string& text) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string UtcNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

std::vector<std::string> ShuffleConditions(const std::string& participant,
                                           const std::string& trial,
                                           std::vector<std::string> conditions) {
  uint64_t state = Fnv1a(participant + '\x1f' + trial);
  for (size_t i = conditions.size(); i > 1; --i) {
    const size_t j = SplitMix64(state) % i;
    std::swap(conditions[i - 1], conditions[j]);
  }
  return conditions;
}

RatingStore::RatingStore(const std::string& artifacts, std::string csv_path)
    : artifacts_(artifacts),
      csv_path_(csv_path.empty() ? (fs::path(artifacts) / "ratings.csv").string()
                                 : std::move(csv_path)) {
  const std::string manifest_path = (fs::path(artifacts) / "manifest.json").string();
  try {
    const json m = json::parse(ReadFile(manifest_path));
    for (const json& c : m.at("conditions")) {
      if (c.value("status", "") != "success") continue;
      for (const json& s : c.at("stimuli")) {
        stimuli_[s.at("id").get<std::string>()] =
            (fs::path(artifacts) / s.at("path").get<std::string>()).string();
      }
    }
    for (const json& t : m.at("trials")) {
      Trial trial;
      trial.id = t.at("id").get<std::string>();
      trial.stimulus = t.at("stimulus").get<std::string>();
      trial.receiver = t.at("receiver").get<std::string>();
      trial.category = t.at("category").get<std::string>();
      trial.reference = t.at("reference").get<std::string>();
      trial.conditions = t.at("conditions").get<std::vector<std::string>>();
      trials_.push_back(std::move(trial));
    }
  } catch (const json::exception& e) {
    throw ParseError("'" + manifest_path + "': " + e.what());
  }
}

std::string RatingStore::Session(const std::string& participant) const {
  json trials = json::array();
  for (const Trial& t : trials_) {
    const std::string suffix = "." + t.stimulus + "_" + t.receiver;
    json conditions = json::array();
    for (const std::string& c : ShuffleConditions(participant, t.id, t.conditions)) {
      conditions.push_back({{"condition", c}, {"stimulus", c + suffix}});
    }
    trials.push_back({{"id", t.id},
                      {"stimulus", t.stimulus},
                      {"receiver", t.receiver},
                      {"category", t.category},
                      {"reference", {{"condition", t.reference},
                                     {"stimulus", t.reference + suffix}}},
                      {"conditions", conditions}});
  }
  return json({{"participant", participant}, {"trials", trials}}).dump(2);
}

std::optional<std::string> RatingStore::StimulusPath(const std::string& id) const {
  const auto it = stimuli_.find(id);
  if (it == stimuli_.end()) return std::nullopt;
  return it->second;
}

std::vector<RatingRecord> RatingStore::Submit(const std::string& body) {
  std::vector<RatingRecord> records;
  try {
    const json j = json::parse(body);
    const json items = j.is_array() ? j : json::array({j});
    if (items.empty()) throw ValidationError("no ratings in request");
    const std::string now = UtcNow();
    for (const json& item : items) {
      RatingRecord r;
      r.participant = item.at("participant").get<std::string>();
      r.trial = item.at("trial").get<std::string>();
      r.condition = item.at("condition").get<std::string>();
      const json& rating = item.at("rating");
      if (!rating.is_number_integer()) {
        throw ValidationError("rating must be an integer");
      }
      const long long value = rating.get<long long>();
      if (value < 0 || value > 100) {
        throw ValidationError("rating " + std::to_string(value) +
                              " outside [0, 100]");
      }
      r.rating = static_cast<int>(value);
      if (r.participant.empty()) throw ValidationError("participant is empty");
      const auto trial = std::find_if(trials_.begin(), trials_.end(),
                                      [&](const Trial& t) { return t.id == r.trial; });
      if (trial == trials_.end()) {
        throw ValidationError("unknown trial '" + r.trial + "'");
      }
      if (std::find(trial->conditions.begin(), trial->conditions.end(),
                    r.condition) == trial->conditions.end()) {
        throw ValidationError("condition '" + r.condition + "' is not in trial '" +
                              r.trial + "'");
      }
      r.timestamp = now;
      records.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed rating: ") + e.what());
  }

  std::string rows;
  for (const RatingRecord& r : records) {
    rows += CsvField(r.participant) + "," + CsvField(r.trial) + "," +
            CsvField(r.condition) + "," + std::to_string(r.rating) + "," +
            r.timestamp + "\n";
  }
  std::lock_guard<std::mutex> lock(mutex_);
  const int fd = ::open(csv_path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw Error("cannot open '" + csv_path_ + "'");
  ::flock(fd, LOCK_EX);
  if (::lseek(fd, 0, SEEK_END) == 0) rows = kCsvHeader + rows;
  const ssize_t written = ::write(fd, rows.data(), rows.size());
  ::flock(fd, LOCK_UN);
  ::close(fd);
  if (written != static_cast<ssize_t>(rows.size())) {
    throw Error("short write to '" + csv_path_ + "'");
  }
  return records;
}

std::string RatingStore::ExportCsv() const {
  std::lock_guard<std::mutex> lock(mutex_);
  if (!fs::exists(csv_path_)) return kCsvHeader;
  return ReadFile(csv_path_);
}

struct RatingServer::Impl {
  RatingStore store;
  httplib::Server server;
};

RatingServer::RatingServer(const std::string& artifacts, std::string csv_path,
                           std::string ui_dir)
    : impl_(new Impl{RatingStore(artifacts, std::move(csv_path)), {}}) {
  Impl* impl = impl_.get();
  httplib::Server& s = impl->server;
  s.Get(R"(/api/session/([^/]+))", [impl](const httplib::Request& req,
                                          httplib::Response& res) {
    res.set_content(impl->store.Session(req.matches[1]), "application/json");
  });
  s.Get(R"(/stimuli/([^/]+))", [impl](const httplib::Request& req,
                                      httplib::Response& res) {
    const auto path = impl->store.StimulusPath(req.matches[1]);
    if (!path) {
      res.status = 404;
      res.set_content("unknown stimulus\n", "text/plain");
      return;
    }
    res.set_content(ReadFile(*path), "audio/wav");
  });
  s.Post("/api/ratings", [impl](const httplib::Request& req,
                                httplib::Response& res) {
    try {
      const auto records = impl->store.Submit(req.body);
      res.set_content(json({{"accepted", records.size()}}).dump(), "application/json");
    } catch (const ValidationError& e) {
      res.status = 400;
      res.set_content(json({{"error", e.what()}}).dump(), "application/json");
    }
  });
  s.Get("/api/export.csv", [impl](const httplib::Request&, httplib::Response& res) {
    res.set_content(impl->store.ExportCsv(), "text/csv");
  });
  if (!ui_dir.empty() && !s.set_mount_point("/", ui_dir)) {
    throw ValidationError("UI directory '" + ui_dir + "' does not exist");
  }
}

RatingServer::~RatingServer() { Stop(); }

int RatingServer::Bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error("cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void RatingServer::Run() { impl_->server.listen_after_bind(); }

void RatingServer::Stop() { impl_->server.stop(); }

}  // namespace auralkit
