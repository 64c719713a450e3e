# -*- coding: utf-8 -*-
#############################################################################
# zlib License
#
# (C) 2026 RelOpt developers
#
# This software is provided 'as-is', without any express or implied
# warranty.  In no event will the authors be held liable for any damages
# arising from the use of this software.
#
# Permission is granted to anyone to use this software for any purpose,
# including commercial applications, and to alter it and redistribute it
# freely, subject to the following restrictions:
#
# 1. The origin of this software must not be misrepresented; you must not
#    claim that you wrote the original software. If you use this software
#    in a product, an acknowledgment in the product documentation would be
#    appreciated but is not required.
# 2. Altered source versions must be plainly marked as such, and must not be
#    misrepresented as being the original software.
# 3. This notice may not be removed or altered from any source distribution.
#############################################################################

import json
import logging

import pytest
import requests

from relopt.adapters.catalog import Catalog
from relopt.adapters.mem_adapter import Mem_Schema
from relopt.adapters.remote import Remote_Schema
from relopt.adapters.schema import Statistics
from relopt.datatypes import FLOAT64
from relopt.datatypes import INT64
from relopt.datatypes import STRING
from relopt.datatypes import RowType
from relopt.traits import collation_of

SALES_ROWS = [
    (1, 10, 0.1),
    (1, 20, None),
    (2, 5, 0.2),
    (3, 7, None),
    (3, 1, 0.3),
    (3, 2, 0.05),
    (4, 9, 0.5),
]

PRODUCT_ROWS = [
    (1, "apple"),
    (2, "pear"),
    (3, "plum"),
    (4, "fig"),
]

ORDER_ROWS = [
    (1, 1, 30),
    (2, 2, 10),
    (3, 1, 40),
    (4, 3, 25),
    (5, 2, 26),
]

CUSTOMER_ROWS = [
    (1, "ann"),
    (2, "bob"),
    (3, "cid"),
]

ZIP_DOCUMENTS = [
    {"city": "BOSTON", "loc": [-71.05, 42.36], "pop": 600000, "state": "MA"},
    {"city": "DENVER", "loc": [-104.99, 39.74], "pop": 700000, "state": "CO"},
    {"city": "AUSTIN", "loc": [-97.74, 30.27], "pop": 950000, "state": "TX"},
]


@pytest.fixture(autouse=True)
def disable_network_calls(monkeypatch):
    def stunted_get():
        raise RuntimeError("Network access not allowed during testing!")

    monkeypatch.setattr(requests, "get", lambda *args, **kwargs: stunted_get())


@pytest.fixture
def logger():
    # logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s:%(name)s:%(message)s')
    logging.basicConfig(level=logging.DEBUG, format='%(asctime)s - %(levelname)s:%(name)s:%(message)s')
    yield logging.getLogger("Test_Logger")


@pytest.fixture
def sales_catalog():
    """The sales/products schema with declared row counts of 1000 and 100"""
    catalog = Catalog("s")
    schema = Mem_Schema("s", "mem")
    schema.create_table(
        "sales",
        RowType.of(("productId", INT64), ("units", INT64), ("discount", FLOAT64)),
        SALES_ROWS,
        statistics=Statistics(row_count=1000),
    )
    schema.create_table(
        "products",
        RowType.of(("productId", INT64), ("name", STRING)),
        PRODUCT_ROWS,
        statistics=Statistics(row_count=100),
        collation=collation_of((0, "ASC")),
    )
    catalog.add_schema(schema)
    yield catalog


@pytest.fixture
def remote_options():
    yield {}


@pytest.fixture
def remote_catalog(remote_options):
    """A remote schema with Orders and Customers, next to a local mem schema"""
    catalog = Catalog("local")
    local = Mem_Schema("local", "mem")
    local.create_table("regions", RowType.of(("customerId", INT64), ("region", STRING)), [(1, "north"), (2, "south"), (3, "north")])
    catalog.add_schema(local)
    remote = Remote_Schema("remote", "remote", remote_options)
    remote.create_table("Orders", RowType.of(("orderId", INT64), ("customerId", INT64), ("units", INT64)), ORDER_ROWS)
    remote.create_table("Customers", RowType.of(("customerId", INT64), ("name", STRING)), CUSTOMER_ROWS)
    catalog.add_schema(remote)
    yield catalog


@pytest.fixture
def remote_backend(remote_catalog):
    yield remote_catalog.schema("remote").backend


@pytest.fixture
def model_dir(tmp_path):
    """A directory with a csv file, a document file, and a model file using them"""
    (tmp_path / "emps.csv").write_text(
        "empno,name,deptno,salary\n100,Fred,10,1000.5\n110,Eric,20,2000.0\n120,Wilma,10,1500.25\n130,Alice,30,\n",
        encoding="utf-8",
    )
    (tmp_path / "depts.csv").write_text("deptno,dname\n10,Sales\n20,Marketing\n30,Accounts\n", encoding="utf-8")
    (tmp_path / "zips.json").write_text("\n".join(json.dumps(document) for document in ZIP_DOCUMENTS) + "\n", encoding="utf-8")
    model = {
        "defaultSchema": "hr",
        "schemas": [
            {
                "name": "hr",
                "adapter": "csv",
                "tables": [
                    {
                        "name": "emps",
                        "path": "emps.csv",
                        "columns": [
                            {"name": "empno", "type": "INT"},
                            {"name": "name", "type": "VARCHAR"},
                            {"name": "deptno", "type": "INT"},
                            {"name": "salary", "type": "DOUBLE"},
                        ],
                        "rowCount": 4,
                        "collation": ["empno"],
                    },
                    {
                        "name": "depts",
                        "path": "depts.csv",
                        "columns": [{"name": "deptno", "type": "INT"}, {"name": "dname", "type": "VARCHAR"}],
                    },
                ],
            },
            {"name": "mongo_raw", "adapter": "doc", "tables": [{"name": "zips", "path": "zips.json"}]},
        ],
        "views": [
            {
                "name": "zips",
                "sql": "SELECT CAST(_MAP['city'] AS VARCHAR(20)) AS city, CAST(_MAP['loc'][0] AS FLOAT) AS longitude, "
                "CAST(_MAP['loc'][1] AS FLOAT) AS latitude FROM mongo_raw.zips",
            }
        ],
    }
    (tmp_path / "model.json").write_text(json.dumps(model, indent=2), encoding="utf-8")
    yield tmp_path


@pytest.fixture
def model_catalog(model_dir):
    from relopt.adapters.model import load_model

    yield load_model(model_dir / "model.json")
