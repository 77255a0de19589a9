#pragma once

#include "abba/alphabet.hpp"
#include "abba/anomaly.hpp"
#include "abba/baselines.hpp"
#include "abba/clustering.hpp"
#include "abba/compression.hpp"
#include "abba/digitization.hpp"
#include "abba/distances.hpp"
#include "abba/error.hpp"
#include "abba/harness.hpp"
#include "abba/ingest.hpp"
#include "abba/normal.hpp"
#include "abba/preprocessing.hpp"
#include "abba/reconstruction.hpp"
#include "abba/report.hpp"
#include "abba/synthetic.hpp"
#include "abba/tarzan.hpp"
