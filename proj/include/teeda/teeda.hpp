#pragma once

// Everything except the HTTP front end (teeda/http_service.hpp), which pulls
// in cpp-httplib.

#include "teeda/analytics.hpp"
#include "teeda/corpus.hpp"
#include "teeda/document.hpp"
#include "teeda/enums.hpp"
#include "teeda/error.hpp"
#include "teeda/item.hpp"
#include "teeda/label.hpp"
#include "teeda/network.hpp"
#include "teeda/persistence.hpp"
#include "teeda/ratio.hpp"
#include "teeda/registry.hpp"
#include "teeda/render.hpp"
#include "teeda/scenario.hpp"
