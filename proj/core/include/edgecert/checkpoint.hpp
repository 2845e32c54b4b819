// Copyright 2026 The edgecert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "edgecert/encoder.hpp"
#include "edgecert/logreg.hpp"

namespace edgecert {

inline constexpr int kCheckpointVersion = 1;

/// Flat text container shared by encoder and classifier checkpoints.
///
///     EDGECERT-CHECKPOINT 1
///     kind encoder
///     meta <key> <value>          (zero or more)
///     tensor <name> <rows> <cols>
///     <rows lines of cols %.17g values, row-major>
///     ...
///     end
struct Checkpoint {
  std::string kind;
  std::map<std::string, std::string> meta;
  std::vector<std::pair<std::string, Eigen::MatrixXd>> tensors;

  const Eigen::MatrixXd& tensor(const std::string& name) const;
};

void write_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint read_checkpoint(const std::filesystem::path& path);

Checkpoint encoder_checkpoint(const EncoderParams& p);
EncoderParams encoder_from_checkpoint(const Checkpoint& ckpt);

Checkpoint logreg_checkpoint(const LogRegModel& m);
LogRegModel logreg_from_checkpoint(const Checkpoint& ckpt);

}  // namespace edgecert
