// Copyright 2026 The qisom Authors
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

// Umbrella header.

#ifndef QISOM_QISOM_HPP
#define QISOM_QISOM_HPP

#include "qisom/bratteli.hpp"
#include "qisom/error.hpp"
#include "qisom/fock.hpp"
#include "qisom/gicar.hpp"
#include "qisom/graded.hpp"
#include "qisom/ideal.hpp"
#include "qisom/json_io.hpp"
#include "qisom/qmatrix.hpp"
#include "qisom/random.hpp"
#include "qisom/rep.hpp"
#include "qisom/rewrite.hpp"
#include "qisom/symmetry.hpp"
#include "qisom/words.hpp"

#endif  // QISOM_QISOM_HPP
