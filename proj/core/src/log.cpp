// Copyright 2026 The qlll Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlll/log.hpp"

#include <iostream>
#include <mutex>
#include <string>
#include <utility>

namespace qlll {
namespace {

std::mutex sink_mutex;

WarningSink &sink() {
    static WarningSink s = [](std::string_view msg) {
        std::cerr << "warning: " << msg << '\n';
    };
    return s;
}

} // namespace

WarningSink set_warning_sink(WarningSink next) {
    std::lock_guard lock(sink_mutex);
    return std::exchange(sink(), std::move(next));
}

void warn(std::string_view message) {
    std::lock_guard lock(sink_mutex);
    if (sink()) {
        sink()(message);
    }
}

} // namespace qlll
