#pragma once

#include "rieszlab/accumulate.hpp"
#include "rieszlab/config.hpp"
#include "rieszlab/core.hpp"
#include "rieszlab/membership.hpp"
#include "rieszlab/multiplier.hpp"
#include "rieszlab/oracle.hpp"
#include "rieszlab/orlicz.hpp"
#include "rieszlab/rng.hpp"
#include "rieszlab/runner.hpp"
#include "rieszlab/series.hpp"
#include "rieszlab/summability.hpp"
#include "rieszlab/summing.hpp"
#include "rieszlab/verdict.hpp"
#include "rieszlab/weights.hpp"
