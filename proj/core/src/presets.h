// Copyright 2026 The risfeel Authors.
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

// Built-in scenario presets. configs/scenario_{a,b,c,d}.conf carry the same
// settings.

#ifndef RISFEEL_SRC_PRESETS_H_
#define RISFEEL_SRC_PRESETS_H_

namespace risfeel {

inline constexpr char kPresetA[] =
    R"(# Scenario A: communication-learning tradeoff without RIS.
# Devices are selected in descending order of channel gain; the sweep
# varies how many participate.

[experiment]
scenario = A
seeds = 1, 2, 3, 4, 5, 6, 7, 8, 9, 10
rounds = 30

[channel]
devices = 20
antennas = 1
ris_elements = 0
direct_model = rayleigh
direct_variance = 1

[selection]
strategy = descending_gain
count = 20

[ris]
optimizer = none

[aggregation]
mode = aircomp
noise_std = 0.1
power_budget = 1

[data]
source = synthetic
classes = 4
features = 10
separation = 2
train_size = 2000
test_size = 1000
partition = iid
samples_per_device = 100

[train]
local_epochs = 1
batch_size = 20
learning_rate = 0.1

[sweep]
key = selection.count
values = 2, 5, 10, 20
)";

inline constexpr char kPresetB[] =
    R"(# Scenario B: joint device selection and RIS design with and without RIS,
# plus an error-free reference run.

[experiment]
scenario = B
seeds = 1, 2, 3, 4, 5, 6, 7, 8, 9, 10
rounds = 30

[channel]
devices = 20
antennas = 1
ris_elements = 64
direct_model = rayleigh
direct_variance = 1
ris_model = rician
ris_k_factor = 10
ris_variance = 1

[selection]
strategy = greedy_codesign
lambda = 1

[ris]
optimizer = mse
levels = 8
max_sweeps = 20
restarts = 2

[aggregation]
mode = aircomp
noise_std = 0.1
power_budget = 1

[data]
source = synthetic
classes = 4
features = 10
separation = 2
train_size = 2000
test_size = 1000
partition = shard
shards_per_device = 2
samples_per_device = 100

[train]
local_epochs = 1
batch_size = 20
learning_rate = 0.1

[sweep]
key = channel.ris_elements
values = 0, 64
reference = error_free
)";

inline constexpr char kPresetC[] =
    R"(# Scenario C: CSIT-free RIS alignment on a one-antenna server, sweeping
# the number of RIS elements.

[experiment]
scenario = C
seeds = 1, 2, 3, 4, 5, 6, 7, 8, 9, 10
rounds = 30

[channel]
devices = 10
antennas = 1
ris_elements = 90
direct_model = rayleigh
direct_variance = 1
ris_model = rician
ris_k_factor = 10
ris_variance = 1

[selection]
strategy = all

[ris]
optimizer = csit_free
levels = 8
max_sweeps = 50
restarts = 2

[aggregation]
mode = aircomp
noise_std = 0.1
power_budget = 1

[data]
source = synthetic
classes = 4
features = 10
separation = 2
train_size = 1000
test_size = 1000
partition = iid
samples_per_device = 100

[train]
local_epochs = 1
batch_size = 20
learning_rate = 0.1

[sweep]
key = channel.ris_elements
values = 10, 30, 50, 90
reference = error_free
)";

inline constexpr char kPresetD[] =
    R"(# Scenario D: privacy tradeoff. Devices clip their updates and add
# artificial noise; the sweep varies the noise level.

[experiment]
scenario = D
seeds = 1, 2, 3, 4, 5, 6, 7, 8, 9, 10
rounds = 30

[channel]
devices = 20
antennas = 1
ris_elements = 0
direct_model = rayleigh
direct_variance = 1

[selection]
strategy = all

[ris]
optimizer = none

[aggregation]
mode = aircomp
noise_std = 0.1
power_budget = 1

[data]
source = synthetic
classes = 4
features = 10
separation = 2
train_size = 2000
test_size = 1000
partition = iid
samples_per_device = 100

[train]
local_epochs = 1
batch_size = 20
learning_rate = 0.1

[privacy]
enabled = true
artificial_noise_std = 0
clip_norm = 1
delta = 1e-5

[sweep]
key = privacy.artificial_noise_std
values = 0, 0.01, 0.05, 0.1, 0.5
)";

}  // namespace risfeel

#endif  // RISFEEL_SRC_PRESETS_H_
