// Convenience umbrella for the whole library.
#pragma once

#include "ldpbl/balls_in_bins.hpp"
#include "ldpbl/blacklist.hpp"
#include "ldpbl/channels.hpp"
#include "ldpbl/client.hpp"
#include "ldpbl/date.hpp"
#include "ldpbl/phone.hpp"
#include "ldpbl/protocol.hpp"
#include "ldpbl/randomizers.hpp"
#include "ldpbl/reed_muller.hpp"
#include "ldpbl/rng.hpp"
#include "ldpbl/server.hpp"
#include "ldpbl/simulation.hpp"
#include "ldpbl/transport.hpp"
