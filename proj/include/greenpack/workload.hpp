// Copyright 2026 The Greenpack Authors
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

#ifndef GREENPACK_WORKLOAD_HPP
#define GREENPACK_WORKLOAD_HPP

#include <string>

#include "greenpack/inventory.hpp"

namespace greenpack {

/// Hardware-independent processor load of one server, in capacity units.
struct NormalizedWorkload {
  std::string server_id;
  // peak_efficiency * sockets * cores_per_socket
  double capacity = 0.0;
  // utilization * capacity
  double load = 0.0;

  friend bool operator==(const NormalizedWorkload&,
                         const NormalizedWorkload&) = default;
};

inline double processor_capacity(const ServerRecord& record) {
  return record.peak_efficiency * static_cast<double>(record.sockets) *
         static_cast<double>(record.cores_per_socket);
}

inline NormalizedWorkload normalized_workload(const ServerRecord& record) {
  const double capacity = processor_capacity(record);
  return {record.id, capacity, record.utilization * capacity};
}

}  // namespace greenpack

#endif  // GREENPACK_WORKLOAD_HPP
