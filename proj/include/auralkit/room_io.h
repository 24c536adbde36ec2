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

#ifndef AURALKIT_ROOM_IO_H_
#define AURALKIT_ROOM_IO_H_

#include <string>

#include "auralkit/geometry.h"

namespace auralkit {

inline constexpr const char* kRoomSchema = "auralkit.room/1";

// Room documents are JSON:
//
//   {
//     "schema": "auralkit.room/1",
//     "name": "living-room",
//     "speed_of_sound": 343,
//     "vertices": [[x, y, z], ...],
//     "materials": {"plaster": {"absorption": [8 values],
//                               "scattering": [8 values],
//                               "centers": [optional band centers]}},
//     "polygons": [{"vertices": [0, 1, 2, 3], "material": "plaster",
//                   "tags": ["wall"]}],
//     "sources": {"A0": [x, y, z]},
//     "receivers": {"1": [x, y, z]}
//   }

// Parses without validating. Throws ParseError.
RoomModel ParseRoom(const std::string& text);

// Reads, parses and validates. Throws ParseError or ValidationError.
RoomModel LoadRoom(const std::string& path);

std::string SerializeRoom(const RoomModel& model);
void SaveRoom(const RoomModel& model, const std::string& path);

}  // namespace auralkit

#endif  // AURALKIT_ROOM_IO_H_
