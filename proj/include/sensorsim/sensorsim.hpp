/*
 * Copyright 2026 The sensorsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "sensorsim/rational.hpp"
#include "sensorsim/image.hpp"
#include "sensorsim/io.hpp"
#include "sensorsim/pgm.hpp"
#include "sensorsim/readout.hpp"
#include "sensorsim/analog_frontend.hpp"
#include "sensorsim/kernel_config.hpp"
#include "sensorsim/signal_chain.hpp"
#include "sensorsim/metrics.hpp"
#include "sensorsim/eval.hpp"
#include "sensorsim/report.hpp"
#include "sensorsim/synth.hpp"
#include "sensorsim/experiment.hpp"
