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

// HTTP service for listening tests over a pipeline artifact tree:
//
//   GET  /api/session/{participant}  trials, conditions in seeded order
//   GET  /stimuli/{id}               WAV bytes
//   POST /api/ratings                {participant, trial, condition, rating}
//   GET  /api/export.csv             every accepted rating

#ifndef AURALKIT_RATING_SERVICE_H_
#define AURALKIT_RATING_SERVICE_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "auralkit/common.h"

namespace auralkit {

struct RatingRecord {
  std::string participant;
  std::string trial;
  std::string condition;
  int rating = 0;
  std::string timestamp;  // ISO 8601, UTC
};

// Fisher-Yates shuffle seeded from FNV-1a of (participant, trial).
std::vector<std::string> ShuffleConditions(const std::string& participant,
                                           const std::string& trial,
                                           std::vector<std::string> conditions);

class RatingStore {
 public:
  // Reads `<artifacts>/manifest.json`; ratings go to `csv_path`
  // (default `<artifacts>/ratings.csv`).
  explicit RatingStore(const std::string& artifacts, std::string csv_path = "");

  // JSON session document for one participant.
  std::string Session(const std::string& participant) const;

  std::optional<std::string> StimulusPath(const std::string& id) const;

  // Parses one rating object or an array of them from a JSON body, checks
  // it against the manifest and appends it. Throws ValidationError (bad
  // request) without writing anything.
  std::vector<RatingRecord> Submit(const std::string& body);

  std::string ExportCsv() const;

  const std::string& csv_path() const { return csv_path_; }

 private:
  struct Trial {
    std::string id;
    std::string stimulus;
    std::string receiver;
    std::string category;
    std::string reference;
    std::vector<std::string> conditions;
  };

  std::string artifacts_;
  std::string csv_path_;
  std::vector<Trial> trials_;
  std::map<std::string, std::string> stimuli_;  // id -> absolute path
  mutable std::mutex mutex_;
};

class RatingServer {
 public:
  RatingServer(const std::string& artifacts, std::string csv_path = "",
               std::string ui_dir = "");
  ~RatingServer();

  // Binds (port 0 picks a free one) and returns the port.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); call after Bind.
  void Run();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace auralkit

#endif  // AURALKIT_RATING_SERVICE_H_
