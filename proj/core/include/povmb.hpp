// Copyright 2026 The povmb Authors
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

#include "povmb/blmpp.hpp"
#include "povmb/channel.hpp"
#include "povmb/errors.hpp"
#include "povmb/feasibility.hpp"
#include "povmb/io.hpp"
#include "povmb/label.hpp"
#include "povmb/linalg.hpp"
#include "povmb/matrix.hpp"
#include "povmb/povm.hpp"
#include "povmb/random.hpp"
#include "povmb/weyl.hpp"
