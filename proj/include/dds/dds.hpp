#pragma once

#include "dds/bounds.hpp"
#include "dds/circuits.hpp"
#include "dds/common.hpp"
#include "dds/domain.hpp"
#include "dds/expr.hpp"
#include "dds/generator.hpp"
#include "dds/interaction.hpp"
#include "dds/network.hpp"
#include "dds/parser.hpp"
#include "dds/report.hpp"
#include "dds/signed_digraph.hpp"
#include "dds/stg.hpp"
#include "dds/verification.hpp"
